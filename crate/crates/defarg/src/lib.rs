//! A reasoner for finite propositional default theories.
//!
//! A default theory `⟨Σ, Δ⟩` (facts plus defaults `pre : jus₁, …, jusₖ / con`)
//! is embedded into a purely classical argumentation system: each default
//! contributes fresh assumption propositions that label its negated
//! prerequisite, its justifications, and its consequence as implications.
//! Extension existence, extension enumeration, and credulous/skeptical
//! queries then reduce to satisfiability questions over that one theory,
//! never leaving propositional logic. A brute-force fixpoint oracle computes
//! extensions straight from the classical definition and cross-validates the
//! whole pipeline.
//!
//! Module map:
//! - [`logic`]: formulas, parsing, CNF, DPLL satisfiability, forgetting.
//! - [`theory`]: default theories and the theory-file format.
//! - [`transform`]: the linear embedding into an argumentation system.
//! - [`argumentation`]: terms, minimal contradictions, supporting arguments,
//!   structures, and default application.
//! - [`reasoner`]: default terms, extensions, and consequence queries.
//! - [`oracle`]: the independent fixpoint reference implementation.
//! - [`generator`]: seeded random theories for self-tests and benchmarks.
//! - [`fixtures`]: small worked example theories, embedded for `selftest`.
//!
//! The `parallel` feature (on by default) runs the candidate-scanning inner
//! loops on rayon; disabling it selects the sequential fallbacks with
//! identical results.

pub mod argumentation;
pub mod fixtures;
pub mod generator;
pub mod logic;
pub mod oracle;
pub mod reasoner;
pub mod selftest;
pub mod theory;
pub mod transform;

pub use argumentation::{CjPair, Term};
pub use logic::{parse_formula, Formula, ParseError, Proposition, TheorySet};
pub use oracle::{CandidateExtension, OracleOutcome};
pub use reasoner::{DefaultTerm, ExtensionHandle, TheoryClassification};
pub use theory::{Default, DefaultTheory, Selector};
pub use transform::{translate, ArgumentationSystem, AssumptionKind, AssumptionRegistry};
