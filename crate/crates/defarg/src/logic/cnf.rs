//! Clause forms. Small formulas are distributed into an equivalent clause
//! set; past a size threshold the translation switches to a definitional
//! (fresh-variable) form that is equivalent on the original vocabulary once
//! the fresh variables are projected away.

use std::fmt;

use super::syntax::{Formula, Proposition};

/// Size threshold (in literal occurrences) above which `to_cnf` switches
/// from structural distribution to the definitional translation.
pub const DEFINITIONAL_THRESHOLD: usize = 64;

/// A signed proposition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub prop: Proposition,
    pub positive: bool,
}

impl Literal {
    pub fn positive(prop: Proposition) -> Self {
        Literal {
            prop,
            positive: true,
        }
    }

    pub fn negative(prop: Proposition) -> Self {
        Literal {
            prop,
            positive: false,
        }
    }

    pub fn negated(&self) -> Self {
        Literal {
            prop: self.prop.clone(),
            positive: !self.positive,
        }
    }

    pub fn to_formula(&self) -> Formula {
        let atom = Formula::atom(self.prop.clone());
        if self.positive {
            atom
        } else {
            Formula::not(atom)
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "{}", self.prop)
    }
}

/// A disjunction of literals, kept sorted and duplicate-free. Clauses with a
/// complementary literal pair are tautologies and are never constructed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    literals: Vec<Literal>,
}

impl Clause {
    /// Builds a clause, or `None` when the literals contain a complementary
    /// pair (a tautology, dropped by every caller).
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Option<Self> {
        let mut lits: Vec<Literal> = literals.into_iter().collect();
        lits.sort();
        lits.dedup();
        for pair in lits.windows(2) {
            if pair[0].prop == pair[1].prop {
                return None;
            }
        }
        Some(Clause { literals: lits })
    }

    pub fn empty() -> Self {
        Clause {
            literals: Vec::new(),
        }
    }

    pub fn unit(lit: Literal) -> Self {
        Clause {
            literals: vec![lit],
        }
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    /// Sign of `prop` in this clause, if it occurs.
    pub fn polarity_of(&self, prop: &Proposition) -> Option<bool> {
        self.literals
            .iter()
            .find(|l| &l.prop == prop)
            .map(|l| l.positive)
    }

    /// True when every literal of `self` occurs in `other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.literals.len() > other.literals.len() {
            return false;
        }
        let mut it = other.literals.iter();
        'outer: for lit in &self.literals {
            for cand in it.by_ref() {
                match cand.cmp(lit) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// Resolvent of `self` and `other` on `prop`, assuming the two clauses
    /// contain `prop` with opposite signs. `None` when the resolvent is a
    /// tautology.
    pub fn resolve_on(&self, other: &Clause, prop: &Proposition) -> Option<Clause> {
        let merged = self
            .literals
            .iter()
            .chain(other.literals.iter())
            .filter(|l| &l.prop != prop)
            .cloned();
        Clause::new(merged)
    }

    /// The clause as a formula: `Falsum` when empty, otherwise the
    /// left-folded disjunction of its literals.
    pub fn to_formula(&self) -> Formula {
        let mut it = self.literals.iter();
        match it.next() {
            None => Formula::Falsum,
            Some(first) => it.fold(first.to_formula(), |acc, l| {
                Formula::or(acc, l.to_formula())
            }),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("false");
        }
        for (i, lit) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// A conjunction of clauses, duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClauseSet {
    clauses: Vec<Clause>,
}

impl ClauseSet {
    pub fn new() -> Self {
        ClauseSet::default()
    }

    pub fn push(&mut self, clause: Clause) {
        if !self.clauses.contains(&clause) {
            self.clauses.push(clause);
        }
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn into_clauses(self) -> Vec<Clause> {
        self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.is_empty())
    }

    pub fn vocabulary(&self) -> std::collections::BTreeSet<Proposition> {
        self.clauses
            .iter()
            .flat_map(|c| c.literals().iter().map(|l| l.prop.clone()))
            .collect()
    }

    pub fn sort(&mut self) {
        self.clauses.sort();
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> Self {
        let mut cs = ClauseSet::new();
        for c in iter {
            cs.push(c);
        }
        cs
    }
}

/// Clause form of a single formula. Distribution below the size threshold
/// (equivalent), definitional translation above it (fresh `@cnf.*` variables,
/// to be treated existentially).
pub fn to_cnf(f: &Formula) -> ClauseSet {
    let mut fresh = 0usize;
    formula_to_cnf(f, &mut fresh)
}

/// Clause form of a whole theory; fresh definitional variables are numbered
/// across the members so the result can be solved as one instance.
pub fn theory_to_cnf(t: &super::syntax::TheorySet) -> ClauseSet {
    let mut fresh = 0usize;
    let mut out = ClauseSet::new();
    for f in t {
        for clause in formula_to_cnf(f, &mut fresh).into_clauses() {
            out.push(clause);
        }
    }
    out
}

fn formula_to_cnf(f: &Formula, fresh: &mut usize) -> ClauseSet {
    if f.literal_occurrences() <= DEFINITIONAL_THRESHOLD {
        nnf_clauses(f, true).into_iter().collect()
    } else {
        definitional(f, fresh)
    }
}

/// Distributive clause form of `f` (when `positive`) or of `¬f`.
fn nnf_clauses(f: &Formula, positive: bool) -> Vec<Clause> {
    match (f, positive) {
        (Formula::Verum, true) | (Formula::Falsum, false) => Vec::new(),
        (Formula::Verum, false) | (Formula::Falsum, true) => vec![Clause::empty()],
        (Formula::Atom(p), sign) => vec![Clause::unit(Literal {
            prop: p.clone(),
            positive: sign,
        })],
        (Formula::Not(g), sign) => nnf_clauses(g, !sign),
        (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
            let mut out = nnf_clauses(a, positive);
            out.extend(nnf_clauses(b, positive));
            out
        }
        (Formula::And(a, b), false) => cross(&nnf_clauses(a, false), &nnf_clauses(b, false)),
        (Formula::Or(a, b), true) => cross(&nnf_clauses(a, true), &nnf_clauses(b, true)),
        (Formula::Implies(a, b), true) => cross(&nnf_clauses(a, false), &nnf_clauses(b, true)),
        (Formula::Implies(a, b), false) => {
            let mut out = nnf_clauses(a, true);
            out.extend(nnf_clauses(b, false));
            out
        }
    }
}

fn cross(left: &[Clause], right: &[Clause]) -> Vec<Clause> {
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left {
        for r in right {
            if let Some(c) = Clause::new(l.literals().iter().chain(r.literals()).cloned()) {
                out.push(c);
            }
        }
    }
    out
}

/// Definitional clause form: one fresh variable per binary connective,
/// defined by a biconditional so that projecting the fresh variables away
/// recovers a form equivalent to the input.
fn definitional(f: &Formula, fresh: &mut usize) -> ClauseSet {
    match simplify_constants(f) {
        Formula::Verum => ClauseSet::new(),
        Formula::Falsum => {
            let mut cs = ClauseSet::new();
            cs.push(Clause::empty());
            cs
        }
        g => {
            let mut clauses = ClauseSet::new();
            let root = define(&g, fresh, &mut clauses);
            clauses.push(Clause::unit(root));
            clauses
        }
    }
}

fn next_fresh(fresh: &mut usize) -> Proposition {
    let p = Proposition::assumption(&format!("cnf.{fresh}"));
    *fresh += 1;
    p
}

fn define(f: &Formula, fresh: &mut usize, clauses: &mut ClauseSet) -> Literal {
    match f {
        Formula::Verum | Formula::Falsum => unreachable!("constants folded before definition"),
        Formula::Atom(p) => Literal::positive(p.clone()),
        Formula::Not(g) => define(g, fresh, clauses).negated(),
        Formula::And(a, b) => {
            let la = define(a, fresh, clauses);
            let lb = define(b, fresh, clauses);
            let v = Literal::positive(next_fresh(fresh));
            push_def(clauses, [v.negated(), la.clone()]);
            push_def(clauses, [v.negated(), lb.clone()]);
            push_def3(clauses, v.clone(), la.negated(), lb.negated());
            v
        }
        Formula::Or(a, b) => {
            let la = define(a, fresh, clauses);
            let lb = define(b, fresh, clauses);
            let v = Literal::positive(next_fresh(fresh));
            push_def3(clauses, v.negated(), la.clone(), lb.clone());
            push_def(clauses, [v.clone(), la.negated()]);
            push_def(clauses, [v.clone(), lb.negated()]);
            v
        }
        Formula::Implies(a, b) => {
            let la = define(a, fresh, clauses);
            let lb = define(b, fresh, clauses);
            let v = Literal::positive(next_fresh(fresh));
            push_def3(clauses, v.negated(), la.negated(), lb.clone());
            push_def(clauses, [v.clone(), la.clone()]);
            push_def(clauses, [v.clone(), lb.negated()]);
            v
        }
    }
}

fn push_def(clauses: &mut ClauseSet, lits: [Literal; 2]) {
    if let Some(c) = Clause::new(lits) {
        clauses.push(c);
    }
}

fn push_def3(clauses: &mut ClauseSet, a: Literal, b: Literal, c: Literal) {
    if let Some(cl) = Clause::new([a, b, c]) {
        clauses.push(cl);
    }
}

fn simplify_constants(f: &Formula) -> Formula {
    match f {
        Formula::Verum | Formula::Falsum | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => match simplify_constants(g) {
            Formula::Verum => Formula::Falsum,
            Formula::Falsum => Formula::Verum,
            s => Formula::not(s),
        },
        Formula::And(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Formula::Falsum, _) | (_, Formula::Falsum) => Formula::Falsum,
            (Formula::Verum, s) | (s, Formula::Verum) => s,
            (sa, sb) => Formula::and(sa, sb),
        },
        Formula::Or(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Formula::Verum, _) | (_, Formula::Verum) => Formula::Verum,
            (Formula::Falsum, s) | (s, Formula::Falsum) => s,
            (sa, sb) => Formula::or(sa, sb),
        },
        Formula::Implies(a, b) => match (simplify_constants(a), simplify_constants(b)) {
            (Formula::Falsum, _) | (_, Formula::Verum) => Formula::Verum,
            (Formula::Verum, s) => s,
            (s, Formula::Falsum) => Formula::not(s),
            (sa, sb) => Formula::implies(sa, sb),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::syntax::Proposition;

    fn atom(name: &str) -> Formula {
        Formula::atom(Proposition::user(name))
    }

    fn lit(name: &str, positive: bool) -> Literal {
        Literal {
            prop: Proposition::user(name),
            positive,
        }
    }

    #[test]
    fn implication_distributes_to_two_clauses() {
        let f = Formula::implies(
            atom("b"),
            Formula::and(Formula::not(atom("a")), Formula::not(atom("c"))),
        );
        let cs = to_cnf(&f);
        let expected: ClauseSet = [
            Clause::new([lit("b", false), lit("a", false)]).unwrap(),
            Clause::new([lit("b", false), lit("c", false)]).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(cs, expected);
    }

    #[test]
    fn constants_map_to_empty_set_and_empty_clause() {
        assert!(to_cnf(&Formula::Verum).is_empty());
        let falsum = to_cnf(&Formula::Falsum);
        assert_eq!(falsum.len(), 1);
        assert!(falsum.has_empty_clause());
    }

    #[test]
    fn tautologous_clauses_are_dropped() {
        let f = Formula::or(atom("a"), Formula::not(atom("a")));
        assert!(to_cnf(&f).is_empty());
    }

    #[test]
    fn subsumption_is_subset_containment() {
        let small = Clause::new([lit("a", true)]).unwrap();
        let big = Clause::new([lit("a", true), lit("b", false)]).unwrap();
        assert!(small.subsumes(&big));
        assert!(!big.subsumes(&small));
        assert!(small.subsumes(&small));
        let other = Clause::new([lit("a", false), lit("b", false)]).unwrap();
        assert!(!small.subsumes(&other));
    }

    #[test]
    fn resolution_drops_the_pivot_and_tautologies() {
        let c1 = Clause::new([lit("p", true), lit("q", true)]).unwrap();
        let c2 = Clause::new([lit("p", false), lit("r", true)]).unwrap();
        let r = c1.resolve_on(&c2, &Proposition::user("p")).unwrap();
        assert_eq!(r, Clause::new([lit("q", true), lit("r", true)]).unwrap());

        let c3 = Clause::new([lit("p", false), lit("q", false)]).unwrap();
        assert!(c1.resolve_on(&c3, &Proposition::user("p")).is_none());
    }

    #[test]
    fn large_formulas_use_fresh_definitional_variables() {
        // 65 occurrences of the same atom forces the definitional path
        let mut f = atom("a");
        for _ in 0..64 {
            f = Formula::or(f, atom("a"));
        }
        assert!(f.literal_occurrences() > DEFINITIONAL_THRESHOLD);
        let cs = to_cnf(&f);
        assert!(cs
            .vocabulary()
            .iter()
            .any(|p| p.name().starts_with("@cnf.")));
    }

    #[test]
    fn definitional_form_preserves_models_on_the_original_vocabulary() {
        // (a & b) | (!a & c), forced through the definitional path
        let small = Formula::or(
            Formula::and(atom("a"), atom("b")),
            Formula::and(Formula::not(atom("a")), atom("c")),
        );
        let mut fresh = 0usize;
        let cs: ClauseSet = definitional(&small, &mut fresh);
        let vocab: Vec<Proposition> = cs.vocabulary().into_iter().collect();
        let orig: Vec<Proposition> = small.vocabulary().into_iter().collect();

        // every assignment of the original atoms satisfies the formula iff it
        // extends to a model of the definitional clauses
        for bits in 0..(1u32 << orig.len()) {
            let assign = |p: &Proposition| {
                orig.iter()
                    .position(|q| q == p)
                    .map(|i| bits & (1 << i) != 0)
                    .unwrap_or(false)
            };
            let direct = small.eval(&assign);
            let mut extended_sat = false;
            let fresh_vars: Vec<&Proposition> =
                vocab.iter().filter(|p| p.is_assumption()).collect();
            for ext in 0..(1u32 << fresh_vars.len()) {
                let full = |p: &Proposition| {
                    if let Some(i) = fresh_vars.iter().position(|q| *q == p) {
                        ext & (1 << i) != 0
                    } else {
                        assign(p)
                    }
                };
                if cs.iter().all(|c| c.to_formula().eval(&full)) {
                    extended_sat = true;
                    break;
                }
            }
            assert_eq!(direct, extended_sat, "assignment {bits:#b}");
        }
    }
}
