//! The linear embedding of a default theory into an argumentation system.
//!
//! Each default `d` with prerequisite `α`, justifications `β₁…βₖ`, and
//! consequence `γ` contributes fresh assumption propositions and the
//! implications
//!
//! ```text
//! @d.p  -> !α      @d.j1 -> β₁ … @d.jk -> βₖ      @d.c  -> γ
//! ```
//!
//! so the resulting theory Ξ is the facts followed by one block per default,
//! in input order. Output size and construction time are linear in the total
//! size of the defaults.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::argumentation::Term;
use crate::logic::{CompiledTheory, Formula, Proposition, TheorySet};
use crate::reasoner::DefaultTerm;
use crate::theory::DefaultTheory;

/// The three roles an assumption can play for its default. Justificational
/// assumptions carry their 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AssumptionKind {
    Prerequisitional,
    Justificational(usize),
    Consequential,
}

/// The fresh assumptions minted for one default.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefaultAssumption {
    default_name: String,
    prerequisitional: Proposition,
    justificational: Vec<Proposition>,
    consequential: Proposition,
}

impl DefaultAssumption {
    pub fn default_name(&self) -> &str {
        &self.default_name
    }

    pub fn prerequisitional(&self) -> &Proposition {
        &self.prerequisitional
    }

    pub fn justificational(&self) -> &[Proposition] {
        &self.justificational
    }

    pub fn consequential(&self) -> &Proposition {
        &self.consequential
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegistryError {
    #[error("unknown default '{0}'")]
    UnknownDefault(String),
    #[error("default '{default}' has {count} justifications, index {index} is out of range")]
    JustificationIndexOutOfRange {
        default: String,
        index: usize,
        count: usize,
    },
}

/// Registry of all default assumptions: per-default records in input order,
/// the partition into prerequisitional / justificational / consequential
/// sets, and the reverse map from an assumption back to its role.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssumptionRegistry {
    records: Vec<DefaultAssumption>,
    by_name: BTreeMap<String, usize>,
    reverse: BTreeMap<Proposition, (String, AssumptionKind)>,
    prerequisitional: BTreeSet<Proposition>,
    justificational: BTreeSet<Proposition>,
    consequential: BTreeSet<Proposition>,
}

impl AssumptionRegistry {
    fn add(&mut self, record: DefaultAssumption) {
        let idx = self.records.len();
        self.by_name.insert(record.default_name.clone(), idx);
        self.reverse.insert(
            record.prerequisitional.clone(),
            (
                record.default_name.clone(),
                AssumptionKind::Prerequisitional,
            ),
        );
        self.prerequisitional
            .insert(record.prerequisitional.clone());
        for (i, a) in record.justificational.iter().enumerate() {
            self.reverse.insert(
                a.clone(),
                (
                    record.default_name.clone(),
                    AssumptionKind::Justificational(i + 1),
                ),
            );
            self.justificational.insert(a.clone());
        }
        self.reverse.insert(
            record.consequential.clone(),
            (record.default_name.clone(), AssumptionKind::Consequential),
        );
        self.consequential.insert(record.consequential.clone());
        self.records.push(record);
    }

    pub fn records(&self) -> &[DefaultAssumption] {
        &self.records
    }

    pub fn record(&self, default: &str) -> Option<&DefaultAssumption> {
        self.by_name.get(default).map(|&i| &self.records[i])
    }

    /// The unique registered assumption for a default and role.
    pub fn assumption_of(
        &self,
        default: &str,
        kind: AssumptionKind,
    ) -> Result<&Proposition, RegistryError> {
        let record = self
            .record(default)
            .ok_or_else(|| RegistryError::UnknownDefault(default.to_string()))?;
        match kind {
            AssumptionKind::Prerequisitional => Ok(&record.prerequisitional),
            AssumptionKind::Consequential => Ok(&record.consequential),
            AssumptionKind::Justificational(i) => record
                .justificational
                .get(i.wrapping_sub(1))
                .ok_or_else(|| RegistryError::JustificationIndexOutOfRange {
                    default: default.to_string(),
                    index: i,
                    count: record.justificational.len(),
                }),
        }
    }

    /// The default name and role of an assumption, if registered.
    pub fn role_of(&self, assumption: &Proposition) -> Option<(&str, AssumptionKind)> {
        self.reverse.get(assumption).map(|(n, k)| (n.as_str(), *k))
    }

    pub fn prerequisitional_set(&self) -> &BTreeSet<Proposition> {
        &self.prerequisitional
    }

    pub fn justificational_set(&self) -> &BTreeSet<Proposition> {
        &self.justificational
    }

    pub fn consequential_set(&self) -> &BTreeSet<Proposition> {
        &self.consequential
    }

    pub fn all(&self) -> BTreeSet<Proposition> {
        self.reverse.keys().cloned().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// A propositional argumentation system `⟨Ξ, A⟩`: a theory with a
/// distinguished assumption vocabulary. Systems produced by [`translate`]
/// additionally carry the registry of default assumptions; hand-built
/// systems (see [`ArgumentationSystem::new`]) have an empty registry.
#[derive(Debug)]
pub struct ArgumentationSystem {
    theory: TheorySet,
    registry: AssumptionRegistry,
    assumptions: BTreeSet<Proposition>,
    source_vars: BTreeSet<Proposition>,
    fact_count: usize,
    pub(crate) compiled_cache: OnceLock<CompiledTheory>,
    pub(crate) mics_cache: OnceLock<Vec<Term>>,
    pub(crate) terms_cache: OnceLock<Vec<DefaultTerm>>,
}

impl ArgumentationSystem {
    /// A system over an explicit assumption vocabulary, with no default
    /// registry. The non-assumables are the rest of the theory vocabulary.
    pub fn new(theory: TheorySet, assumptions: impl IntoIterator<Item = Proposition>) -> Self {
        let assumptions: BTreeSet<Proposition> = assumptions.into_iter().collect();
        let source_vars = theory
            .vocabulary()
            .difference(&assumptions)
            .cloned()
            .collect();
        let fact_count = theory.len();
        ArgumentationSystem {
            theory,
            registry: AssumptionRegistry::default(),
            assumptions,
            source_vars,
            fact_count,
            compiled_cache: OnceLock::new(),
            mics_cache: OnceLock::new(),
            terms_cache: OnceLock::new(),
        }
    }

    pub fn theory(&self) -> &TheorySet {
        &self.theory
    }

    pub fn registry(&self) -> &AssumptionRegistry {
        &self.registry
    }

    pub fn assumptions(&self) -> &BTreeSet<Proposition> {
        &self.assumptions
    }

    pub fn source_vars(&self) -> &BTreeSet<Proposition> {
        &self.source_vars
    }

    /// The members of Ξ contributed by the facts (they come first).
    pub fn facts(&self) -> &[Formula] {
        &self.theory.members()[..self.fact_count]
    }

    pub(crate) fn compiled(&self) -> &CompiledTheory {
        self.compiled_cache.get_or_init(|| {
            CompiledTheory::compile_extended(&self.theory, self.assumptions.iter().cloned())
        })
    }

    /// The theory printed as a theory file, assumption implications included
    /// as facts. Output order is facts first, then per-default blocks.
    pub fn theory_file(&self) -> String {
        let mut out = String::new();
        for f in &self.theory {
            out.push_str(&format!("fact {f}.\n"));
        }
        out
    }

    /// JSON form: the theory as formula strings plus the assumption triples.
    pub fn to_json(&self) -> Value {
        let xi: Vec<String> = self.theory.iter().map(|f| f.to_string()).collect();
        let mut assumptions = serde_json::Map::new();
        for record in self.registry.records() {
            assumptions.insert(
                record.default_name().to_string(),
                json!({
                    "p": record.prerequisitional().to_string(),
                    "j": record
                        .justificational()
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>(),
                    "c": record.consequential().to_string(),
                }),
            );
        }
        json!({ "xi": xi, "assumptions": Value::Object(assumptions) })
    }
}

/// Embeds a default theory into its argumentation system.
pub fn translate(dt: &DefaultTheory) -> ArgumentationSystem {
    let mut theory = dt.facts().clone();
    let fact_count = theory.len();
    let mut registry = AssumptionRegistry::default();
    for d in dt.defaults() {
        let prerequisitional = Proposition::assumption(&format!("{}.p", d.name()));
        let justificational: Vec<Proposition> = (1..=d.justifications().len())
            .map(|i| Proposition::assumption(&format!("{}.j{i}", d.name())))
            .collect();
        let consequential = Proposition::assumption(&format!("{}.c", d.name()));

        theory.insert(Formula::implies(
            Formula::atom(prerequisitional.clone()),
            Formula::not(d.prerequisite().clone()),
        ));
        for (a, jus) in justificational.iter().zip(d.justifications()) {
            theory.insert(Formula::implies(Formula::atom(a.clone()), jus.clone()));
        }
        theory.insert(Formula::implies(
            Formula::atom(consequential.clone()),
            d.consequence().clone(),
        ));

        registry.add(DefaultAssumption {
            default_name: d.name().to_string(),
            prerequisitional,
            justificational,
            consequential,
        });
    }
    let assumptions = registry.all();
    let source_vars = dt.vars();
    ArgumentationSystem {
        theory,
        registry,
        assumptions,
        source_vars,
        fact_count,
        compiled_cache: OnceLock::new(),
        mics_cache: OnceLock::new(),
        terms_cache: OnceLock::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::theory::DefaultTheory;

    fn disjunctive_pair() -> DefaultTheory {
        DefaultTheory::parse("fact e | o. default d1 = e : r / r. default d2 = o : r / r.").unwrap()
    }

    #[test]
    fn translation_matches_the_expected_implication_blocks() {
        let sys = translate(&disjunctive_pair());
        let expected: Vec<&str> = vec![
            "e | o",
            "@d1.p -> !e",
            "@d1.j1 -> r",
            "@d1.c -> r",
            "@d2.p -> !o",
            "@d2.j1 -> r",
            "@d2.c -> r",
        ];
        let got: Vec<String> = sys.theory().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, expected);
        let names: Vec<&str> = sys.assumptions().iter().map(|p| p.name()).collect();
        assert_eq!(
            names,
            vec!["@d1.c", "@d1.j1", "@d1.p", "@d2.c", "@d2.j1", "@d2.p"]
        );
    }

    #[test]
    fn two_justifications_give_five_formulas() {
        let dt = DefaultTheory::parse("fact s. default d = p : q, r / w.").unwrap();
        let sys = translate(&dt);
        assert_eq!(sys.theory().len(), 5);
        assert_eq!(
            sys.registry().record("d").unwrap().justificational().len(),
            2
        );
    }

    #[test]
    fn verum_prerequisite_is_negated_literally() {
        let dt = DefaultTheory::parse("default d = p : q / !q.").unwrap();
        let sys = translate(&dt);
        let got: Vec<String> = sys.theory().iter().map(|f| f.to_string()).collect();
        assert_eq!(got, vec!["@d.p -> !p", "@d.j1 -> q", "@d.c -> !q"]);
    }

    #[test]
    fn registry_lookup_and_errors() {
        let sys = translate(&disjunctive_pair());
        let reg = sys.registry();
        assert_eq!(
            reg.assumption_of("d1", AssumptionKind::Consequential)
                .unwrap()
                .name(),
            "@d1.c"
        );
        assert_eq!(
            reg.assumption_of("d1", AssumptionKind::Justificational(1))
                .unwrap()
                .name(),
            "@d1.j1"
        );
        assert_eq!(
            reg.assumption_of("d9", AssumptionKind::Prerequisitional),
            Err(RegistryError::UnknownDefault("d9".into()))
        );
        assert!(matches!(
            reg.assumption_of("d1", AssumptionKind::Justificational(2)),
            Err(RegistryError::JustificationIndexOutOfRange { .. })
        ));
        assert!(matches!(
            reg.assumption_of("d1", AssumptionKind::Justificational(0)),
            Err(RegistryError::JustificationIndexOutOfRange { .. })
        ));
        let (name, kind) = reg
            .role_of(&Proposition::assumption("d2.j1"))
            .expect("registered");
        assert_eq!(name, "d2");
        assert_eq!(kind, AssumptionKind::Justificational(1));
    }

    #[test]
    fn every_assumption_occurs_exactly_once_as_an_antecedent() {
        let dt = DefaultTheory::parse(
            "fact b -> !a & !c. default d1 = true : a / a. default d2 = true : b, c / b.",
        )
        .unwrap();
        let sys = translate(&dt);
        for a in sys.assumptions() {
            let occurrences: Vec<&Formula> = sys
                .theory()
                .iter()
                .filter(|f| f.vocabulary().contains(a))
                .collect();
            assert_eq!(occurrences.len(), 1, "assumption {a}");
            match occurrences[0] {
                Formula::Implies(lhs, _) => {
                    assert_eq!(**lhs, Formula::atom(a.clone()));
                }
                other => panic!("assumption {a} not an implication antecedent: {other}"),
            }
        }
        // erasing the per-default blocks leaves exactly the facts
        let erased: TheorySet = sys
            .theory()
            .iter()
            .filter(|f| f.vocabulary().iter().all(|p| !p.is_assumption()))
            .cloned()
            .collect();
        assert_eq!(&erased, dt.facts());
    }

    #[test]
    fn size_grows_linearly_with_the_defaults() {
        let dt = DefaultTheory::parse(
            "fact s. default d1 = a : b / c. default d2 = c : d, e / f. default d3 = f : g, h, i / a.",
        )
        .unwrap();
        let sys = translate(&dt);
        let expected: usize = dt
            .defaults()
            .iter()
            .map(|d| d.justifications().len() + 2)
            .sum();
        assert_eq!(sys.theory().len() - dt.facts().len(), expected);
    }

    #[test]
    fn json_shape_matches_the_declared_schema() {
        let sys = translate(&disjunctive_pair());
        let v = sys.to_json();
        assert_eq!(v["xi"][0], "e | o");
        assert_eq!(v["assumptions"]["d1"]["p"], "@d1.p");
        assert_eq!(v["assumptions"]["d1"]["j"][0], "@d1.j1");
        assert_eq!(v["assumptions"]["d2"]["c"], "@d2.c");
    }

    #[test]
    fn hand_built_systems_partition_the_vocabulary() {
        let theory: TheorySet = ["@a1 -> p", "@a2 -> q", "!p", "!q"]
            .iter()
            .map(|s| build(s))
            .collect();
        let sys = ArgumentationSystem::new(
            theory,
            [Proposition::assumption("a1"), Proposition::assumption("a2")],
        );
        assert_eq!(sys.assumptions().len(), 2);
        let user: Vec<&str> = sys.source_vars().iter().map(|p| p.name()).collect();
        assert_eq!(user, vec!["p", "q"]);
    }

    // builds formulas that mention assumption-namespace atoms, which the
    // text parser deliberately refuses
    fn build(s: &str) -> Formula {
        if let Some((lhs, rhs)) = s.split_once(" -> ") {
            Formula::implies(build(lhs), build(rhs))
        } else if let Some(stripped) = s.strip_prefix('!') {
            Formula::not(build(stripped))
        } else if let Some(stripped) = s.strip_prefix('@') {
            Formula::atom(Proposition::assumption(stripped))
        } else {
            parse_formula(s).unwrap()
        }
    }
}
