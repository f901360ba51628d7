//! Seeded random default theories and probe formulas, used by the self-test,
//! the acceptance suite, and the benchmarks. Every theory is a pure function
//! of its seed, so parallel runs stay reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::logic::{Formula, Proposition, TheorySet};
use crate::theory::{Default as DefaultRule, DefaultTheory};

/// Shape bounds for generated theories.
#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    /// Number of available source propositions (named `a`, `b`, …).
    pub max_vars: usize,
    pub max_defaults: usize,
    pub max_justifications: usize,
    /// Facts are random clauses with at most this many literals.
    pub max_facts: usize,
    pub max_clause_len: usize,
}

impl std::default::Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            max_vars: 5,
            max_defaults: 5,
            max_justifications: 2,
            max_facts: 3,
            max_clause_len: 3,
        }
    }
}

const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn var(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Proposition {
    Proposition::user(NAMES[rng.gen_range(0..cfg.max_vars.min(NAMES.len()))])
}

fn literal(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Formula {
    let atom = Formula::atom(var(rng, cfg));
    if rng.gen_bool(0.5) {
        atom
    } else {
        Formula::not(atom)
    }
}

fn clause(rng: &mut ChaCha8Rng, cfg: &GeneratorConfig) -> Formula {
    let len = rng.gen_range(1..=cfg.max_clause_len);
    let mut f = literal(rng, cfg);
    for _ in 1..len {
        f = Formula::or(f, literal(rng, cfg));
    }
    f
}

/// A random default theory for the given seed.
pub fn random_theory(seed: u64, cfg: &GeneratorConfig) -> DefaultTheory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut facts = TheorySet::new();
    for _ in 0..rng.gen_range(0..=cfg.max_facts) {
        facts.insert(clause(&mut rng, cfg));
    }
    let n_defaults = rng.gen_range(0..=cfg.max_defaults);
    let defaults = (1..=n_defaults)
        .map(|i| {
            let prerequisite = if rng.gen_bool(0.4) {
                Formula::Verum
            } else {
                literal(&mut rng, cfg)
            };
            let n_jus = rng.gen_range(1..=cfg.max_justifications);
            let justifications = (0..n_jus).map(|_| literal(&mut rng, cfg)).collect();
            let consequence = literal(&mut rng, cfg);
            DefaultRule::new(format!("d{i}"), prerequisite, justifications, consequence)
        })
        .collect();
    DefaultTheory::new(facts, defaults)
}

/// A small random probe formula over the theory's variable range.
pub fn random_probe(seed: u64, cfg: &GeneratorConfig) -> Formula {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match rng.gen_range(0..4) {
        0 => literal(&mut rng, cfg),
        1 => clause(&mut rng, cfg),
        2 => {
            let a = literal(&mut rng, cfg);
            let b = literal(&mut rng, cfg);
            Formula::and(a, b)
        }
        _ => {
            let a = literal(&mut rng, cfg);
            let b = literal(&mut rng, cfg);
            Formula::implies(a, b)
        }
    }
}

/// A chain-shaped theory with `n` defaults, each denying the next link's
/// justification; scales the assumption vocabulary linearly for benchmarks.
pub fn chain_theory(n: usize) -> DefaultTheory {
    assert!((1..=100_000).contains(&n));
    let prop = |i: usize| Proposition::user(&format!("p{i}"));
    let defaults = (1..=n)
        .map(|i| {
            DefaultRule::new(
                format!("d{i}"),
                Formula::Verum,
                vec![Formula::atom(prop(i - 1))],
                Formula::not(Formula::atom(prop(i))),
            )
        })
        .collect();
    DefaultTheory::new(TheorySet::new(), defaults)
}

/// A free-choice theory with `n` independent defaults; its oracle candidate
/// space is the full subset lattice.
pub fn free_choice_theory(n: usize) -> DefaultTheory {
    assert!((1..=100_000).contains(&n));
    let defaults = (1..=n)
        .map(|i| {
            let atom = Formula::atom(Proposition::user(&format!("p{i}")));
            DefaultRule::new(format!("d{i}"), Formula::Verum, vec![atom.clone()], atom)
        })
        .collect();
    DefaultTheory::new(TheorySet::new(), defaults)
}
