//! Classical propositional substrate: language, parsing, clause forms,
//! satisfiability, entailment, and marginalization. Everything above this
//! module reduces its questions to these operations.
//!
//! All operations are pure functions of their inputs; the values are
//! immutable once built, so concurrent use of shared inputs is safe.

mod cnf;
mod forget;
pub(crate) mod parser;
mod sat;
mod syntax;

pub use cnf::{theory_to_cnf, to_cnf, Clause, ClauseSet, Literal, DEFINITIONAL_THRESHOLD};
pub use forget::{canonical_form, clause_strings, forget};
pub use parser::{parse_formula, ParseError};
pub use sat::{entails, equivalent, is_satisfiable, CompiledTheory};
pub use syntax::{Formula, Namespace, Proposition, TheorySet};
