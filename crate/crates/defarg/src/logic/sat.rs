//! Complete satisfiability and entailment. A small DPLL procedure with unit
//! propagation and counter-based clause scanning; branching is deterministic
//! on the lowest proposition name so repeated runs give identical traces.

use std::collections::BTreeMap;

use super::cnf::{theory_to_cnf, Literal};
use super::syntax::{Formula, Proposition, TheorySet};

/// A theory compiled to integer-indexed clauses, reusable across many
/// satisfiability queries that differ only in their assumed unit literals.
#[derive(Debug, Clone)]
pub struct CompiledTheory {
    clauses: Vec<Vec<i32>>,
    props: Vec<Proposition>,
    ids: BTreeMap<Proposition, usize>,
    unsat: bool,
}

impl CompiledTheory {
    pub fn compile(t: &TheorySet) -> Self {
        Self::compile_extended(t, std::iter::empty())
    }

    /// Compiles `t`, reserving variables for `extra` propositions even when
    /// they do not occur in the theory (so they can appear in assumed units).
    pub fn compile_extended(t: &TheorySet, extra: impl IntoIterator<Item = Proposition>) -> Self {
        let cs = theory_to_cnf(t);
        let mut vocab = cs.vocabulary();
        vocab.extend(extra);
        let props: Vec<Proposition> = vocab.into_iter().collect();
        let ids: BTreeMap<Proposition, usize> = props
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let mut unsat = false;
        let clauses = cs
            .iter()
            .map(|c| {
                if c.is_empty() {
                    unsat = true;
                }
                c.literals()
                    .iter()
                    .map(|l| {
                        let v = ids[&l.prop] as i32 + 1;
                        if l.positive {
                            v
                        } else {
                            -v
                        }
                    })
                    .collect()
            })
            .collect();
        CompiledTheory {
            clauses,
            props,
            ids,
            unsat,
        }
    }

    pub fn variable_count(&self) -> usize {
        self.props.len()
    }

    /// Occurrence polarities of `prop` across the clause set:
    /// `(occurs positively, occurs negatively)`.
    pub fn polarities(&self, prop: &Proposition) -> (bool, bool) {
        let Some(&v) = self.ids.get(prop) else {
            return (false, false);
        };
        let idx = v as i32 + 1;
        let mut pos = false;
        let mut neg = false;
        for clause in &self.clauses {
            for &lit in clause {
                if lit == idx {
                    pos = true;
                } else if lit == -idx {
                    neg = true;
                }
            }
        }
        (pos, neg)
    }

    /// Decides whether the theory together with the given unit literals has a
    /// model. Units over propositions unknown to the theory are free and
    /// cannot contribute a conflict (the caller guarantees the units
    /// themselves are complement-free).
    pub fn satisfiable_with(&self, units: &[Literal]) -> bool {
        debug_assert!(
            units.iter().all(|u| !units.contains(&u.negated())),
            "assumed units contain a complementary pair"
        );
        if self.unsat {
            return false;
        }
        let mut assign = vec![0i8; self.props.len()];
        for u in units {
            if let Some(&v) = self.ids.get(&u.prop) {
                let val = if u.positive { 1 } else { -1 };
                if assign[v] == -val {
                    return false;
                }
                assign[v] = val;
            }
        }
        self.dpll(assign)
    }

    fn dpll(&self, mut assign: Vec<i8>) -> bool {
        // unit propagation to fixpoint
        loop {
            let mut changed = false;
            for clause in &self.clauses {
                let mut satisfied = false;
                let mut unassigned = 0usize;
                let mut last = 0i32;
                for &lit in clause {
                    let v = lit.unsigned_abs() as usize - 1;
                    let want = if lit > 0 { 1 } else { -1 };
                    match assign[v] {
                        0 => {
                            unassigned += 1;
                            last = lit;
                        }
                        val if val == want => {
                            satisfied = true;
                            break;
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match unassigned {
                    0 => return false,
                    1 => {
                        let v = last.unsigned_abs() as usize - 1;
                        assign[v] = if last > 0 { 1 } else { -1 };
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }
        // branch on the lowest-named unassigned proposition
        match assign.iter().position(|&v| v == 0) {
            None => true,
            Some(v) => {
                let mut high = assign.clone();
                high[v] = 1;
                if self.dpll(high) {
                    return true;
                }
                assign[v] = -1;
                self.dpll(assign)
            }
        }
    }
}

/// Complete satisfiability of a theory together with assumed unit literals.
pub fn is_satisfiable(t: &TheorySet, units: &[Literal]) -> bool {
    CompiledTheory::compile_extended(t, units.iter().map(|l| l.prop.clone()))
        .satisfiable_with(units)
}

/// Classical entailment: `t ⊢ f` iff `t ∪ {¬f}` is unsatisfiable.
pub fn entails(t: &TheorySet, f: &Formula) -> bool {
    let mut refuted = t.clone();
    refuted.insert(Formula::not(f.clone()));
    !is_satisfiable(&refuted, &[])
}

/// Logical equivalence of two theories: mutual entailment of every member.
pub fn equivalent(a: &TheorySet, b: &TheorySet) -> bool {
    a.iter().all(|f| entails(b, f)) && b.iter().all(|f| entails(a, f))
}
