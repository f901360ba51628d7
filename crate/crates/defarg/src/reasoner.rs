//! Default terms, extension reconstruction, and credulous/skeptical query
//! answering on top of the argumentation machinery.
//!
//! Default terms are found by a depth-first search over application
//! sequences: starting from the empty consequential term, a default extends
//! the anchor when its prerequisite has become derivable and its
//! justifications are still individually consistent; a node is emitted when
//! no unapplied default is applicable and every justification of the applied
//! defaults survives against the final anchor. Anchors reached by permuted
//! sequences are collapsed through a visited set. The search itself is
//! sequential; distinct queries against one system may run concurrently.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::argumentation::Term;
use crate::logic::{forget, CompiledTheory, Formula, Literal, Proposition, TheorySet};
use crate::transform::ArgumentationSystem;

/// The anchor of an accessible structure, together with one witnessing
/// application order. The empty anchor encodes the trivial ⊤ default term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefaultTerm {
    anchor: Term,
    generating_sequence: Vec<String>,
}

impl DefaultTerm {
    pub fn anchor(&self) -> &Term {
        &self.anchor
    }

    /// Default names in the order the search applied them.
    pub fn generating_sequence(&self) -> &[String] {
        &self.generating_sequence
    }

    pub fn generating_defaults(&self) -> BTreeSet<String> {
        self.generating_sequence.iter().cloned().collect()
    }
}

/// One extension, reconstructed from a default term: the marginal of
/// Ξ ∪ α onto the source vocabulary is a finite base whose closure is the
/// extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionHandle {
    default_term: DefaultTerm,
    marginal: TheorySet,
}

impl ExtensionHandle {
    pub fn default_term(&self) -> &DefaultTerm {
        &self.default_term
    }

    pub fn generating_defaults(&self) -> BTreeSet<String> {
        self.default_term.generating_defaults()
    }

    pub fn marginal(&self) -> &TheorySet {
        &self.marginal
    }
}

/// The four mutually exclusive shapes a default theory can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TheoryClassification {
    /// The facts are unsatisfiable; the only extension is the inconsistent one.
    InconsistentFacts,
    /// Consistent facts but no extension at all.
    NoExtension,
    /// Exactly one extension, the closure of the facts alone.
    UniqueTrivial,
    /// `n ≥ 1` extensions generated by nonempty default terms.
    Extensions(usize),
}

impl std::fmt::Display for TheoryClassification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TheoryClassification::InconsistentFacts => f.write_str("inconsistent-facts"),
            TheoryClassification::NoExtension => f.write_str("no-extension"),
            TheoryClassification::UniqueTrivial => f.write_str("unique-trivial"),
            TheoryClassification::Extensions(n) => write!(f, "extensions({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReasonerError {
    #[error("term {0} is not a default term of this system")]
    NotADefaultTerm(Term),
    #[error("formula mentions assumption-namespace proposition {0}")]
    AssumptionInFormula(Proposition),
}

/// Bookkeeping from one search run, used to check that permuted routes to
/// the same anchor always carry the same default set.
#[derive(Clone, Debug, Default)]
pub struct SearchTrace {
    pub anchors_visited: usize,
    pub revisits: usize,
    pub permutation_violations: Vec<(Term, BTreeSet<String>, BTreeSet<String>)>,
}

/// Answer to a consequence query, with enough context for honest reporting
/// when the theory has no extensions at all.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QueryOutcome {
    pub answer: bool,
    pub vacuous: bool,
    pub classification: TheoryClassification,
}

struct Search<'a> {
    sys: &'a ArgumentationSystem,
    incons: Box<dyn Fn(&Term) -> bool + 'a>,
    visited: BTreeMap<Term, Vec<String>>,
    found: Vec<(Term, Vec<String>)>,
    trace: SearchTrace,
}

impl<'a> Search<'a> {
    fn run(mut self) -> (Vec<DefaultTerm>, SearchTrace) {
        if !(self.incons)(&Term::top()) {
            self.visit(Term::top(), Vec::new());
        }
        let mut found = std::mem::take(&mut self.found);
        found.sort_by(|a, b| a.0.cmp(&b.0));
        let terms = found
            .into_iter()
            .map(|(anchor, generating_sequence)| DefaultTerm {
                anchor,
                generating_sequence,
            })
            .collect();
        (terms, self.trace)
    }

    fn visit(&mut self, anchor: Term, route: Vec<String>) {
        if let Some(first_route) = self.visited.get(&anchor) {
            self.trace.revisits += 1;
            let first: BTreeSet<String> = first_route.iter().cloned().collect();
            let current: BTreeSet<String> = route.iter().cloned().collect();
            if first != current {
                self.trace
                    .permutation_violations
                    .push((anchor, first, current));
            }
            return;
        }
        self.trace.anchors_visited += 1;
        self.visited.insert(anchor.clone(), route.clone());

        let used: BTreeSet<&str> = route.iter().map(|s| s.as_str()).collect();
        let mut applicable = Vec::new();
        for record in self.sys.registry().records() {
            if used.contains(record.default_name()) {
                continue;
            }
            let forced = anchor
                .with(Literal::positive(record.prerequisitional().clone()))
                .map(|t| (self.incons)(&t))
                .unwrap_or(true);
            if !forced {
                continue;
            }
            let alive = record.justificational().iter().all(|a| {
                anchor
                    .with(Literal::positive(a.clone()))
                    .map(|t| !(self.incons)(&t))
                    .unwrap_or(false)
            });
            if alive {
                applicable.push(record);
            }
        }

        if applicable.is_empty() {
            // closed: audit every applied default's justifications against
            // the final anchor before emitting
            let survives = route.iter().all(|name| {
                let record = self.sys.registry().record(name).expect("applied default");
                record.justificational().iter().all(|a| {
                    anchor
                        .with(Literal::positive(a.clone()))
                        .map(|t| !(self.incons)(&t))
                        .unwrap_or(false)
                })
            });
            if survives {
                self.found.push((anchor, route));
            }
            return;
        }
        for record in applicable {
            let extended = anchor
                .with(Literal::positive(record.consequential().clone()))
                .expect("consequential assumptions extend positive anchors");
            let mut next_route = route.clone();
            next_route.push(record.default_name().to_string());
            self.visit(extended, next_route);
        }
    }
}

impl ArgumentationSystem {
    /// All default terms, in canonical anchor order; cached after the first
    /// computation. Inconsistency checks go straight to the solver.
    pub fn default_terms(&self) -> &[DefaultTerm] {
        self.terms_cache
            .get_or_init(|| self.default_terms_traced().0)
    }

    /// An uncached search run that also reports visit statistics.
    pub fn default_terms_traced(&self) -> (Vec<DefaultTerm>, SearchTrace) {
        let search = Search {
            sys: self,
            incons: Box::new(move |t: &Term| self.is_inconsistent_term(t)),
            visited: BTreeMap::new(),
            found: Vec::new(),
            trace: SearchTrace::default(),
        };
        search.run()
    }

    /// The same search with inconsistency decided by superset tests against
    /// the minimal contradictions instead of fresh satisfiability calls.
    /// Worthwhile only when the assumption set is small; results must agree
    /// with [`ArgumentationSystem::default_terms`].
    pub fn default_terms_via_mics(&self) -> Vec<DefaultTerm> {
        let mics = self.minimal_contradictions();
        let search = Search {
            sys: self,
            incons: Box::new(move |t: &Term| mics.iter().any(|m| m.is_subset_of(t))),
            visited: BTreeMap::new(),
            found: Vec::new(),
            trace: SearchTrace::default(),
        };
        search.run().0
    }

    /// The corollary case this system falls into.
    pub fn classify(&self) -> TheoryClassification {
        if !self.compiled().satisfiable_with(&[]) {
            return TheoryClassification::InconsistentFacts;
        }
        let terms = self.default_terms();
        if terms.is_empty() {
            TheoryClassification::NoExtension
        } else if terms.len() == 1 && terms[0].anchor.is_empty() {
            TheoryClassification::UniqueTrivial
        } else {
            TheoryClassification::Extensions(terms.len())
        }
    }

    /// Materializes the extension determined by a default term: the marginal
    /// of Ξ ∪ α onto the source vocabulary.
    pub fn extension_of(&self, term: &DefaultTerm) -> Result<ExtensionHandle, ReasonerError> {
        if !self.default_terms().iter().any(|d| d.anchor == term.anchor) {
            return Err(ReasonerError::NotADefaultTerm(term.anchor.clone()));
        }
        let mut base = self.theory().clone();
        base.extend(term.anchor.literals().map(|l| l.to_formula()));
        let marginal = forget(&base, self.source_vars());
        Ok(ExtensionHandle {
            default_term: term.clone(),
            marginal,
        })
    }

    /// All extensions, in default-term order.
    pub fn extensions(&self) -> Vec<ExtensionHandle> {
        self.default_terms()
            .iter()
            .map(|t| self.extension_of(t).expect("term from own search"))
            .collect()
    }

    /// Membership of a formula in the extension of a default term, decided
    /// by entailment without materializing the marginal.
    pub fn in_extension(
        &self,
        term: &DefaultTerm,
        hypothesis: &Formula,
    ) -> Result<bool, ReasonerError> {
        self.check_source_formula(hypothesis)?;
        let refuted = self.with_refuted(hypothesis);
        Ok(!refuted.satisfiable_with(&term.anchor.units()))
    }

    /// Credulous consequence: the hypothesis holds in at least one extension.
    pub fn credulous(&self, hypothesis: &Formula) -> Result<QueryOutcome, ReasonerError> {
        self.check_source_formula(hypothesis)?;
        let refuted = self.with_refuted(hypothesis);
        let answer = self
            .default_terms()
            .iter()
            .any(|d| self.query_via_support(d, &refuted));
        Ok(QueryOutcome {
            answer,
            vacuous: false,
            classification: self.classify(),
        })
    }

    /// Skeptical consequence: the hypothesis holds in every extension.
    /// Vacuously true when there are no default terms; callers surface that
    /// through the `vacuous` flag.
    pub fn skeptical(&self, hypothesis: &Formula) -> Result<QueryOutcome, ReasonerError> {
        self.check_source_formula(hypothesis)?;
        let refuted = self.with_refuted(hypothesis);
        let terms = self.default_terms();
        let answer = terms.iter().all(|d| self.query_via_support(d, &refuted));
        Ok(QueryOutcome {
            answer,
            vacuous: terms.is_empty(),
            classification: self.classify(),
        })
    }

    /// Does some supporting argument with positive part exactly `d` entail
    /// the hypothesis? Sufficient to test the maximal completion of the
    /// anchor by negated unused assumptions: it is total, so it is safe iff
    /// it is satisfiable with Ξ, and both safety and entailment only improve
    /// towards it. The answer is asserted against plain entailment from the
    /// anchor, which must coincide because negated assumptions are inert on
    /// the source vocabulary.
    fn query_via_support(&self, d: &DefaultTerm, refuted: &CompiledTheory) -> bool {
        let mut completion = d.anchor.clone();
        for a in self.assumptions() {
            if d.anchor.literals().all(|l| &l.prop != a) {
                completion = completion
                    .with(Literal::negative(a.clone()))
                    .expect("fresh proposition extends the anchor");
            }
        }
        let supported = self.compiled().satisfiable_with(&completion.units())
            && !refuted.satisfiable_with(&completion.units());
        let direct = !refuted.satisfiable_with(&d.anchor.units());
        assert_eq!(
            supported, direct,
            "support-based and entailment-based answers diverged on {}",
            d.anchor
        );
        supported
    }

    fn with_refuted(&self, hypothesis: &Formula) -> CompiledTheory {
        let mut theory = self.theory().clone();
        theory.insert(Formula::not(hypothesis.clone()));
        CompiledTheory::compile_extended(&theory, self.assumptions().iter().cloned())
    }

    fn check_source_formula(&self, f: &Formula) -> Result<(), ReasonerError> {
        if let Some(p) = f.vocabulary().into_iter().find(|p| p.is_assumption()) {
            return Err(ReasonerError::AssumptionInFormula(p));
        }
        Ok(())
    }

    /// Classification plus extension handles as the JSON report shape shared
    /// with the oracle. Marginals are materialized only when requested.
    pub fn report_json(&self, with_marginals: bool) -> Value {
        let classification = self.classify();
        let extensions: Vec<Value> = match classification {
            TheoryClassification::InconsistentFacts => Vec::new(),
            _ => self
                .default_terms()
                .iter()
                .map(|t| {
                    let mut entry = json!({
                        "defaultTerm": t.anchor().to_json(),
                        "generatingDefaults": t
                            .generating_defaults()
                            .iter()
                            .cloned()
                            .collect::<Vec<_>>(),
                    });
                    if with_marginals {
                        let handle = self.extension_of(t).expect("term from own search");
                        entry["marginal"] = Value::Array(
                            handle
                                .marginal()
                                .iter()
                                .map(|f| Value::String(f.to_string()))
                                .collect(),
                        );
                    }
                    entry
                })
                .collect(),
        };
        json!({
            "classification": classification.to_string(),
            "extensions": extensions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{equivalent, parse_formula};
    use crate::theory::DefaultTheory;
    use crate::transform::translate;

    fn system(src: &str) -> ArgumentationSystem {
        translate(&DefaultTheory::parse(src).unwrap())
    }

    fn anchor_names(terms: &[DefaultTerm]) -> Vec<Vec<String>> {
        terms
            .iter()
            .map(|t| t.anchor().literals().map(|l| l.to_string()).collect())
            .collect()
    }

    const CHAIN: &str =
        "default d1 = true : c / !d. default d2 = true : d / !e. default d3 = true : e / !f.";
    const MUTUAL: &str =
        "fact b -> d. fact c -> d. default d1 = true : !c / b. default d2 = true : !b / c.";

    #[test]
    fn chain_has_one_default_term() {
        let sys = system(CHAIN);
        let terms = sys.default_terms();
        assert_eq!(anchor_names(terms), vec![vec!["@d1.c", "@d3.c"]]);
        assert_eq!(terms[0].generating_sequence(), ["d1", "d3"]);
    }

    #[test]
    fn blocked_justification_keeps_only_the_trivial_term() {
        let sys = system("fact p. fact q. default d1 = p : !q / !q.");
        let terms = sys.default_terms();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].anchor().is_empty());
        assert_eq!(sys.classify(), TheoryClassification::UniqueTrivial);
    }

    #[test]
    fn self_defeating_default_has_no_term() {
        let sys = system("default d1 = true : p / !p.");
        assert!(sys.default_terms().is_empty());
        assert_eq!(sys.classify(), TheoryClassification::NoExtension);
    }

    #[test]
    fn contrary_justification_has_no_term() {
        let sys = system("default d1 = true : !p / p.");
        assert!(sys.default_terms().is_empty());
        assert_eq!(sys.classify(), TheoryClassification::NoExtension);
    }

    #[test]
    fn inconsistent_facts_classify_first() {
        let sys = system("fact p. fact !p. default d1 = p : q / q.");
        assert_eq!(sys.classify(), TheoryClassification::InconsistentFacts);
        assert!(sys.default_terms().is_empty());
    }

    #[test]
    fn free_choices_produce_two_extensions() {
        let sys = system(
            "fact b -> !a & !c. default d1 = true : a / a. default d2 = true : b / b. default d3 = true : c / c.",
        );
        let terms = sys.default_terms();
        assert_eq!(
            anchor_names(terms),
            vec![vec!["@d1.c", "@d3.c"], vec!["@d2.c"]]
        );
        assert_eq!(sys.classify(), TheoryClassification::Extensions(2));
    }

    #[test]
    fn chain_extension_marginal() {
        let sys = system(CHAIN);
        let handle = sys.extension_of(&sys.default_terms()[0].clone()).unwrap();
        let expected: TheorySet = [parse_formula("!d").unwrap(), parse_formula("!f").unwrap()]
            .into_iter()
            .collect();
        assert!(equivalent(handle.marginal(), &expected));
        let strings: Vec<String> = handle.marginal().iter().map(|f| f.to_string()).collect();
        assert_eq!(strings, vec!["!d", "!f"]);
        assert_eq!(
            handle.generating_defaults(),
            ["d1", "d3"].iter().map(|s| s.to_string()).collect()
        );
    }

    #[test]
    fn free_choice_single_extension_marginal() {
        let sys = system(
            "fact b -> !a & !c. default d1 = true : a / a. default d2 = true : b / b. default d3 = true : c / c.",
        );
        let b_term = sys.default_terms()[1].clone();
        let handle = sys.extension_of(&b_term).unwrap();
        let expected: TheorySet = [
            parse_formula("b -> !a & !c").unwrap(),
            parse_formula("b").unwrap(),
        ]
        .into_iter()
        .collect();
        assert!(equivalent(handle.marginal(), &expected));
    }

    #[test]
    fn trivial_term_marginal_is_the_facts() {
        let sys = system("fact e | o. default d1 = e : r / r.");
        assert_eq!(sys.classify(), TheoryClassification::UniqueTrivial);
        let handle = sys.extension_of(&sys.default_terms()[0].clone()).unwrap();
        let expected: TheorySet = [parse_formula("e | o").unwrap()].into_iter().collect();
        assert!(equivalent(handle.marginal(), &expected));
    }

    #[test]
    fn extension_of_rejects_foreign_terms() {
        let sys = system(CHAIN);
        let fake = DefaultTerm {
            anchor: Term::new([Literal::positive(Proposition::assumption("d2.c"))]).unwrap(),
            generating_sequence: vec!["d2".into()],
        };
        assert!(matches!(
            sys.extension_of(&fake),
            Err(ReasonerError::NotADefaultTerm(_))
        ));
    }

    #[test]
    fn in_extension_examples() {
        let sys = system(CHAIN);
        let term = sys.default_terms()[0].clone();
        assert!(sys
            .in_extension(&term, &parse_formula("!d").unwrap())
            .unwrap());
        // !e is open: e is unconstrained in the extension base {!d, !f}
        assert!(!sys
            .in_extension(&term, &parse_formula("!e").unwrap())
            .unwrap());
        assert!(sys.in_extension(&term, &Formula::Verum).unwrap());
        assert!(matches!(
            sys.in_extension(&term, &Formula::atom(Proposition::assumption("d1.c"))),
            Err(ReasonerError::AssumptionInFormula(_))
        ));
    }

    #[test]
    fn credulous_and_skeptical_on_the_mutual_pair() {
        let sys = system(MUTUAL);
        let q = |s: &str| parse_formula(s).unwrap();
        assert!(sys.credulous(&q("b")).unwrap().answer);
        assert!(sys.credulous(&q("c")).unwrap().answer);
        assert!(!sys.credulous(&q("!d")).unwrap().answer);
        assert!(sys.skeptical(&q("b | c")).unwrap().answer);
        assert!(sys.skeptical(&q("d")).unwrap().answer);
        assert!(!sys.skeptical(&q("b")).unwrap().answer);
    }

    #[test]
    fn queries_over_no_extensions() {
        let sys = system("default d1 = true : p / !p.");
        let q = parse_formula("p").unwrap();
        let cred = sys.credulous(&q).unwrap();
        assert!(!cred.answer);
        let skep = sys.skeptical(&q).unwrap();
        assert!(skep.answer && skep.vacuous);
        assert_eq!(skep.classification, TheoryClassification::NoExtension);
    }

    #[test]
    fn mics_backed_search_agrees_with_the_solver_backed_search() {
        for src in [
            CHAIN,
            MUTUAL,
            "fact p. fact q. default d1 = p : !q / !q.",
            "fact e | o. default d1 = e : r / r. default d2 = o : r / r.",
            "default d1 = true : p / !p.",
        ] {
            let sys = system(src);
            assert_eq!(sys.default_terms(), sys.default_terms_via_mics().as_slice());
        }
    }

    #[test]
    fn revisited_anchors_are_permutations() {
        let sys = system(
            "default d1 = true : p / p. default d2 = true : q / q. default d3 = true : r / r.",
        );
        let (terms, trace) = sys.default_terms_traced();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].generating_defaults().len(), 3);
        assert!(trace.revisits > 0);
        assert!(trace.permutation_violations.is_empty());
    }

    #[test]
    fn default_term_anchors_form_structures_with_their_justifications() {
        for src in [CHAIN, MUTUAL] {
            let sys = system(src);
            for t in sys.default_terms() {
                let anchor = t.anchor();
                assert_eq!(anchor, &anchor.positive_part(), "anchors are positive");
                for l in anchor.literals() {
                    assert!(sys.registry().consequential_set().contains(&l.prop));
                }
                let irrelevant: std::collections::BTreeSet<Literal> = t
                    .generating_sequence()
                    .iter()
                    .flat_map(|name| {
                        sys.registry()
                            .record(name)
                            .unwrap()
                            .justificational()
                            .iter()
                            .map(|a| Literal::positive(a.clone()))
                    })
                    .collect();
                assert!(sys.is_structure(anchor, &irrelevant));
            }
        }
    }

    #[test]
    fn report_json_shape() {
        let sys = system(CHAIN);
        let v = sys.report_json(true);
        assert_eq!(v["classification"], "extensions(1)");
        assert_eq!(v["extensions"][0]["defaultTerm"][0], "@d1.c");
        assert_eq!(v["extensions"][0]["generatingDefaults"][1], "d3");
        assert_eq!(v["extensions"][0]["marginal"][0], "!d");
        let without = sys.report_json(false);
        assert!(without["extensions"][0].get("marginal").is_none());
    }
}
