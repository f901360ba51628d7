//! Marginalization (variable forgetting) by clause-level resolution
//! elimination, followed by a prime-implicate closure so that equivalent
//! theories marginalize to the same clause set.

use std::collections::BTreeSet;

use super::cnf::{theory_to_cnf, Clause};
use super::syntax::{Proposition, TheorySet};

/// Restricts the consequences of `t` to the propositions in `keep`.
///
/// The result `ψ` satisfies `t ⊢ ψ` and every consequence of `t` over `keep`
/// is a consequence of `ψ`. It is returned as the full set of prime
/// implicates over `keep`, subsumption-minimal and sorted, so any two
/// equivalent inputs produce identical output. Propositions in `keep` that do
/// not occur in `t` are permitted and vacuous; definitional `@cnf.*`
/// variables introduced for oversized formulas are forgotten along with
/// everything else outside `keep`.
pub fn forget(t: &TheorySet, keep: &BTreeSet<Proposition>) -> TheorySet {
    let clauses = subsumption_reduce(theory_to_cnf(t).into_clauses());
    let mut vocab: BTreeSet<Proposition> = BTreeSet::new();
    for c in &clauses {
        vocab.extend(c.literals().iter().map(|l| l.prop.clone()));
    }
    let eliminate: Vec<Proposition> = vocab.difference(keep).cloned().collect();

    let mut current = clauses;
    for var in &eliminate {
        current = eliminate_variable(current, var);
    }
    let primes = resolution_closure(current);
    primes.into_iter().map(|c| c.to_formula()).collect()
}

fn eliminate_variable(clauses: Vec<Clause>, var: &Proposition) -> Vec<Clause> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut rest = Vec::new();
    for c in clauses {
        match c.polarity_of(var) {
            Some(true) => pos.push(c),
            Some(false) => neg.push(c),
            None => rest.push(c),
        }
    }
    for p in &pos {
        for n in &neg {
            if let Some(r) = p.resolve_on(n, var) {
                if !rest.contains(&r) {
                    rest.push(r);
                }
            }
        }
    }
    subsumption_reduce(rest)
}

/// Removes every clause that is subsumed by another (and exact duplicates).
fn subsumption_reduce(mut clauses: Vec<Clause>) -> Vec<Clause> {
    clauses.sort();
    clauses.dedup();
    let mut keep = vec![true; clauses.len()];
    for i in 0..clauses.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..clauses.len() {
            if i != j && keep[j] && clauses[i].subsumes(&clauses[j]) {
                keep[j] = false;
            }
        }
    }
    clauses
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect()
}

/// Saturates the clause set under resolution, dropping tautologies and
/// subsumed clauses, which yields exactly the prime implicates.
fn resolution_closure(clauses: Vec<Clause>) -> Vec<Clause> {
    let mut set = subsumption_reduce(clauses);
    loop {
        let mut fresh: Vec<Clause> = Vec::new();
        for i in 0..set.len() {
            for j in i + 1..set.len() {
                let pivots: Vec<Proposition> = set[i]
                    .literals()
                    .iter()
                    .filter(|l| set[j].polarity_of(&l.prop) == Some(!l.positive))
                    .map(|l| l.prop.clone())
                    .collect();
                for p in pivots {
                    if let Some(r) = set[i].resolve_on(&set[j], &p) {
                        let redundant = set.iter().chain(fresh.iter()).any(|c| c.subsumes(&r));
                        if !redundant {
                            fresh.push(r);
                        }
                    }
                }
            }
        }
        if fresh.is_empty() {
            let mut out = subsumption_reduce(set);
            out.sort();
            return out;
        }
        set.extend(fresh);
        set = subsumption_reduce(set);
    }
}

/// The prime-implicate normal form of a theory over its own vocabulary.
/// Equivalent theories canonicalize to syntactically identical output.
pub fn canonical_form(t: &TheorySet) -> TheorySet {
    forget(t, &t.vocabulary())
}

/// Convenience view of a canonicalized theory as printable clause strings.
pub fn clause_strings(t: &TheorySet) -> Vec<String> {
    t.iter().map(|f| f.to_string()).collect()
}
