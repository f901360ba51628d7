//! Brute-force reference implementation of extensions, straight from the
//! fixpoint definition: guess a set of generating defaults, rebuild the
//! approximation sequence against the guessed closure, and accept the guess
//! iff the rebuilt generating set is exactly the guess. Exponential in the
//! number of defaults by design; its value is independence and simplicity,
//! not speed.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::logic::{entails, forget, is_satisfiable, Formula, TheorySet};
use crate::theory::DefaultTheory;

/// Subset enumeration bound; past this the oracle refuses to run.
pub const DEFAULT_MAX_DEFAULTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("theory has {count} defaults, oracle bound is {bound}")]
    TooManyDefaults { count: usize, bound: usize },
}

/// A verified extension: the generating defaults and the finite base
/// Σ ∪ con(D) whose closure is the extension. Closures are never
/// materialized; comparisons are entailment-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateExtension {
    generating_defaults: BTreeSet<String>,
    base: TheorySet,
}

impl CandidateExtension {
    pub fn generating_defaults(&self) -> &BTreeSet<String> {
        &self.generating_defaults
    }

    pub fn base(&self) -> &TheorySet {
        &self.base
    }
}

/// Oracle verdict for a whole theory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    /// Unsatisfiable facts: the closure of Σ is the single, inconsistent
    /// extension.
    InconsistentFacts,
    /// The consistent extensions, deduplicated up to equivalence of bases.
    Extensions(Vec<CandidateExtension>),
}

fn base_of(dt: &DefaultTheory, selection: &BTreeSet<String>) -> TheorySet {
    let mut base = dt.facts().clone();
    for d in dt.defaults() {
        if selection.contains(d.name()) {
            base.insert(d.consequence().clone());
        }
    }
    base
}

/// Checks whether `selection` generates an extension: rebuilding the
/// approximation sequence — prerequisites decided by entailment from the
/// base built so far, justifications checked by entailment against the
/// guessed closure — must reproduce exactly `selection`. The rebuild
/// stabilizes after at most one round per default.
pub fn is_extension(dt: &DefaultTheory, selection: &BTreeSet<String>) -> bool {
    let guess = base_of(dt, selection);
    let mut generated: BTreeSet<String> = BTreeSet::new();
    loop {
        let base = base_of(dt, &generated);
        let next: BTreeSet<String> = dt
            .defaults()
            .iter()
            .filter(|d| {
                entails(&base, d.prerequisite())
                    && d.justifications()
                        .iter()
                        .all(|j| !entails(&guess, &Formula::not(j.clone())))
            })
            .map(|d| d.name().to_string())
            .collect();
        if next == generated {
            break;
        }
        generated = next;
    }
    generated == *selection
}

/// Enumerates all extensions by checking every subset of the defaults.
pub fn extensions(dt: &DefaultTheory, bound: usize) -> Result<OracleOutcome, OracleError> {
    let verdicts = |selections: Vec<BTreeSet<String>>| -> Vec<BTreeSet<String>> {
        #[cfg(feature = "parallel")]
        {
            selections
                .into_par_iter()
                .filter(|s| is_extension(dt, s))
                .collect()
        }
        #[cfg(not(feature = "parallel"))]
        {
            selections
                .into_iter()
                .filter(|s| is_extension(dt, s))
                .collect()
        }
    };
    extensions_with(dt, bound, verdicts)
}

/// Sequential subset scan, regardless of the `parallel` feature.
pub fn extensions_seq(dt: &DefaultTheory, bound: usize) -> Result<OracleOutcome, OracleError> {
    extensions_with(dt, bound, |selections| {
        selections
            .into_iter()
            .filter(|s| is_extension(dt, s))
            .collect()
    })
}

/// Parallel subset scan; identical outcome to [`extensions_seq`].
#[cfg(feature = "parallel")]
pub fn extensions_par(dt: &DefaultTheory, bound: usize) -> Result<OracleOutcome, OracleError> {
    extensions_with(dt, bound, |selections| {
        selections
            .into_par_iter()
            .filter(|s| is_extension(dt, s))
            .collect()
    })
}

fn extensions_with(
    dt: &DefaultTheory,
    bound: usize,
    verdicts: impl Fn(Vec<BTreeSet<String>>) -> Vec<BTreeSet<String>>,
) -> Result<OracleOutcome, OracleError> {
    let n = dt.defaults().len();
    if n > bound {
        return Err(OracleError::TooManyDefaults { count: n, bound });
    }
    if !is_satisfiable(dt.facts(), &[]) {
        return Ok(OracleOutcome::InconsistentFacts);
    }
    let names: Vec<&str> = dt.defaults().iter().map(|d| d.name()).collect();
    let selections: Vec<BTreeSet<String>> = (0u64..(1u64 << n))
        .map(|mask| {
            names
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, name)| name.to_string())
                .collect()
        })
        .collect();
    let mut accepted = verdicts(selections);
    accepted.sort();

    // deduplicate by equivalence of bases (smaller selections first)
    accepted.sort_by_key(|s| s.len());
    let mut out: Vec<CandidateExtension> = Vec::new();
    for selection in accepted {
        let base = base_of(dt, &selection);
        if !out.iter().any(|e| crate::logic::equivalent(&e.base, &base)) {
            out.push(CandidateExtension {
                generating_defaults: selection,
                base,
            });
        }
    }
    out.sort_by(|a, b| a.generating_defaults.cmp(&b.generating_defaults));
    Ok(OracleOutcome::Extensions(out))
}

/// The oracle verdict in the same JSON shape the reasoner reports, for
/// direct diffing: default terms are spelled as the consequential assumption
/// names of the generating defaults, and marginals are the canonicalized
/// bases over the source vocabulary.
pub fn report_json(dt: &DefaultTheory, outcome: &OracleOutcome) -> Value {
    match outcome {
        OracleOutcome::InconsistentFacts => json!({
            "classification": "inconsistent-facts",
            "extensions": [],
        }),
        OracleOutcome::Extensions(exts) => {
            let classification = if exts.is_empty() {
                "no-extension".to_string()
            } else if exts.len() == 1 && exts[0].generating_defaults.is_empty() {
                "unique-trivial".to_string()
            } else {
                format!("extensions({})", exts.len())
            };
            let vars = dt.vars();
            let entries: Vec<Value> = exts
                .iter()
                .map(|e| {
                    let term: Vec<String> = e
                        .generating_defaults
                        .iter()
                        .map(|n| format!("@{n}.c"))
                        .collect();
                    let marginal: Vec<String> = forget(&e.base, &vars)
                        .iter()
                        .map(|f| f.to_string())
                        .collect();
                    json!({
                        "defaultTerm": term,
                        "generatingDefaults": e
                            .generating_defaults
                            .iter()
                            .cloned()
                            .collect::<Vec<_>>(),
                        "marginal": marginal,
                    })
                })
                .collect();
            json!({
                "classification": classification,
                "extensions": entries,
            })
        }
    }
}
