//! Core argumentation-system machinery: terms over the assumption
//! vocabulary, inconsistent terms and minimal contradictions, term safety,
//! supporting arguments, structures, default applicability, and the default
//! application map on consequence-justification pairs.
//!
//! Minimal contradictions are found by enumerating candidate terms in
//! nondecreasing size with superset pruning against contradictions already
//! found, one satisfiability call per candidate. The candidate universe is
//! first narrowed by a polarity argument: a unit literal whose complement
//! polarity never occurs in the clause form cannot participate in any
//! minimal contradiction. With the `parallel` feature each size level is
//! scanned on rayon; the sequential fallback scans in the same order and
//! returns identical results.

use std::collections::BTreeSet;
use std::fmt;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use serde_json::Value;

use crate::logic::{CompiledTheory, Formula, Literal};
use crate::transform::{ArgumentationSystem, DefaultAssumption};

/// A set of assumption literals without complementary pairs. The empty term
/// stands for ⊤.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    literals: BTreeSet<Literal>,
}

impl Term {
    /// The empty term ⊤.
    pub fn top() -> Self {
        Term::default()
    }

    /// Builds a term, or `None` when the literals contain a complementary
    /// pair.
    pub fn new(literals: impl IntoIterator<Item = Literal>) -> Option<Self> {
        let literals: BTreeSet<Literal> = literals.into_iter().collect();
        let mut props = BTreeSet::new();
        for l in &literals {
            if !props.insert(l.prop.clone()) {
                return None;
            }
        }
        Some(Term { literals })
    }

    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.literals.iter()
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        self.literals.contains(lit)
    }

    pub fn is_subset_of(&self, other: &Term) -> bool {
        self.literals.is_subset(&other.literals)
    }

    /// The positive part α⁺: positive literals only.
    pub fn positive_part(&self) -> Term {
        Term {
            literals: self
                .literals
                .iter()
                .filter(|l| l.positive)
                .cloned()
                .collect(),
        }
    }

    /// Extends the term by one literal; `None` if the complement is present.
    pub fn with(&self, lit: Literal) -> Option<Term> {
        if self.literals.contains(&lit.negated()) {
            return None;
        }
        let mut literals = self.literals.clone();
        literals.insert(lit);
        Some(Term { literals })
    }

    /// Union of two terms; `None` when they clash on some proposition.
    pub fn union(&self, other: &Term) -> Option<Term> {
        let mut out = self.clone();
        for l in &other.literals {
            out = out.with(l.clone())?;
        }
        Some(out)
    }

    /// True when `self ∪ other` is still a term.
    pub fn sign_compatible(&self, other: &Term) -> bool {
        other
            .literals
            .iter()
            .all(|l| !self.literals.contains(&l.negated()))
    }

    /// The literals as solver units.
    pub fn units(&self) -> Vec<Literal> {
        self.literals.iter().cloned().collect()
    }

    /// JSON form: an array of signed names, e.g. `["@d1.c", "!@d2.j1"]`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.literals
                .iter()
                .map(|l| Value::String(l.to_string()))
                .collect(),
        )
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}")
    }
}

/// A consequence-justification pair: an anchor of consequential assumptions
/// plus the justificational assumptions collected while building it. The
/// sink value ⟨{⊥}, ∅⟩ absorbs every further application.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CjPair {
    anchor: Term,
    irrelevant: BTreeSet<Literal>,
    bottom: bool,
}

impl CjPair {
    /// The starting pair ⟨⊤, ∅⟩.
    pub fn top() -> Self {
        CjPair {
            anchor: Term::top(),
            irrelevant: BTreeSet::new(),
            bottom: false,
        }
    }

    pub fn new(anchor: Term, irrelevant: BTreeSet<Literal>) -> Self {
        CjPair {
            anchor,
            irrelevant,
            bottom: false,
        }
    }

    /// The sink ⟨{⊥}, ∅⟩.
    pub fn sink() -> Self {
        CjPair {
            anchor: Term::top(),
            irrelevant: BTreeSet::new(),
            bottom: true,
        }
    }

    pub fn is_sink(&self) -> bool {
        self.bottom
    }

    pub fn anchor(&self) -> &Term {
        &self.anchor
    }

    pub fn irrelevant(&self) -> &BTreeSet<Literal> {
        &self.irrelevant
    }
}

impl fmt::Display for CjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bottom {
            return f.write_str("<{false}, {}>");
        }
        write!(f, "<{}, {{", self.anchor)?;
        for (i, l) in self.irrelevant.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        f.write_str("}>")
    }
}

impl ArgumentationSystem {
    /// True iff Ξ together with the term is unsatisfiable.
    pub fn is_inconsistent_term(&self, term: &Term) -> bool {
        !self.compiled().satisfiable_with(&term.units())
    }

    /// The ⊆-minimal inconsistent terms, cached after the first computation.
    ///
    /// When Ξ is unsatisfiable on its own the result is `{⊤}` encoded as the
    /// singleton empty term; when no term is inconsistent the result is
    /// empty. Output is sorted canonically.
    pub fn minimal_contradictions(&self) -> &[Term] {
        self.mics_cache.get_or_init(|| {
            #[cfg(feature = "parallel")]
            {
                self.minimal_contradictions_par()
            }
            #[cfg(not(feature = "parallel"))]
            {
                self.minimal_contradictions_seq()
            }
        })
    }

    /// Sequential minimal-contradiction scan (uncached).
    pub fn minimal_contradictions_seq(&self) -> Vec<Term> {
        self.minimal_contradictions_with(|sys, candidates| {
            candidates
                .into_iter()
                .filter(|t| sys.is_inconsistent_term(t))
                .collect()
        })
    }

    /// Parallel minimal-contradiction scan (uncached); identical results to
    /// the sequential scan, candidates decided level by level on rayon.
    #[cfg(feature = "parallel")]
    pub fn minimal_contradictions_par(&self) -> Vec<Term> {
        self.minimal_contradictions_with(|sys, candidates| {
            candidates
                .into_par_iter()
                .filter(|t| sys.is_inconsistent_term(t))
                .collect()
        })
    }

    fn minimal_contradictions_with(
        &self,
        scan: impl Fn(&Self, Vec<Term>) -> Vec<Term>,
    ) -> Vec<Term> {
        let compiled = self.compiled();
        if !compiled.satisfiable_with(&[]) {
            return vec![Term::top()];
        }
        let universe = self.contradiction_universe();
        let mut found: Vec<Term> = Vec::new();
        for size in 1..=universe.len() {
            let candidates = combinations(&universe, size, &found);
            if candidates.is_empty() {
                break;
            }
            found.extend(scan(self, candidates));
        }
        found.sort();
        found
    }

    /// Assumption literals that can occur in a minimal contradiction: a unit
    /// literal conflicts with the clause form only through clauses holding
    /// its complement, so literals whose complement polarity never occurs
    /// are excluded up front.
    fn contradiction_universe(&self) -> Vec<Literal> {
        let compiled = self.compiled();
        let mut universe = Vec::new();
        for a in self.assumptions() {
            let (pos, neg) = compiled.polarities(a);
            if neg {
                universe.push(Literal::positive(a.clone()));
            }
            if pos {
                universe.push(Literal::negative(a.clone()));
            }
        }
        universe.sort();
        universe
    }

    /// True iff every superset term of `term` stays satisfiable with Ξ;
    /// computed as sign-compatibility against the minimal contradictions.
    pub fn is_safe_term(&self, term: &Term) -> bool {
        self.minimal_contradictions()
            .iter()
            .all(|mic| !mic.sign_compatible(term))
    }

    /// The ⊆-minimal safe terms that together with Ξ entail the hypothesis,
    /// in canonical order. Enumerates the full signed assumption vocabulary,
    /// so it is intended for small assumption sets.
    pub fn supporting_arguments(&self, hypothesis: &Formula) -> Vec<Term> {
        let mut refuted = self.theory().clone();
        refuted.insert(Formula::not(hypothesis.clone()));
        let entail = CompiledTheory::compile_extended(&refuted, self.assumptions().iter().cloned());
        let mics = self.minimal_contradictions();

        let mut universe = Vec::new();
        for a in self.assumptions() {
            universe.push(Literal::negative(a.clone()));
            universe.push(Literal::positive(a.clone()));
        }
        universe.sort();

        let mut found: Vec<Term> = Vec::new();
        for size in 0..=universe.len() {
            let candidates = combinations(&universe, size, &found);
            if size > 0 && candidates.is_empty() {
                break;
            }
            for cand in candidates {
                let safe = mics.iter().all(|mic| !mic.sign_compatible(&cand));
                if safe && !entail.satisfiable_with(&cand.units()) {
                    found.push(cand);
                }
            }
        }
        found.sort();
        found
    }

    /// Structure check: the anchor is consistent with Ξ and every irrelevant
    /// literal can be added to it individually. Pairwise additions are not
    /// checked.
    pub fn is_structure(&self, anchor: &Term, irrelevant: &BTreeSet<Literal>) -> bool {
        let compiled = self.compiled();
        if !compiled.satisfiable_with(&anchor.units()) {
            return false;
        }
        irrelevant.iter().all(|l| match anchor.with(l.clone()) {
            Some(extended) => compiled.satisfiable_with(&extended.units()),
            None => false,
        })
    }

    /// Applicability of a default assumption with respect to a consequential
    /// term: the prerequisitional assumption clashes with Ξ ∪ α (the
    /// prerequisite is derivable) while every justificational assumption
    /// stays consistent with it. The consequential assumption itself is not
    /// checked here.
    pub fn is_applicable(&self, assumption: &DefaultAssumption, anchor: &Term) -> bool {
        let forced = match anchor.with(Literal::positive(assumption.prerequisitional().clone())) {
            Some(t) => self.is_inconsistent_term(&t),
            None => true,
        };
        if !forced {
            return false;
        }
        assumption.justificational().iter().all(|a| {
            match anchor.with(Literal::positive(a.clone())) {
                Some(t) => !self.is_inconsistent_term(&t),
                None => false,
            }
        })
    }

    /// The application map on consequence-justification pairs: an applicable
    /// default extends the anchor by its consequential assumption and files
    /// its justificational assumptions as irrelevant; a non-applicable
    /// default leaves a structure unchanged; anything else collapses to the
    /// sink. The extended pair is returned unchecked and may fail to be a
    /// structure.
    pub fn apply_default(&self, assumption: &DefaultAssumption, pair: &CjPair) -> CjPair {
        if pair.bottom || !self.is_structure(&pair.anchor, &pair.irrelevant) {
            return CjPair::sink();
        }
        if !self.is_applicable(assumption, &pair.anchor) {
            return pair.clone();
        }
        let anchor = pair
            .anchor
            .with(Literal::positive(assumption.consequential().clone()))
            .expect("consequential assumptions extend positive anchors");
        let mut irrelevant = pair.irrelevant.clone();
        irrelevant.extend(
            assumption
                .justificational()
                .iter()
                .map(|a| Literal::positive(a.clone())),
        );
        CjPair::new(anchor, irrelevant)
    }
}

/// All size-`size` terms over `universe` that are not supersets of an
/// already-found term, in lexicographic order.
fn combinations(universe: &[Literal], size: usize, found: &[Term]) -> Vec<Term> {
    let mut out = Vec::new();
    let mut picked: Vec<Literal> = Vec::with_capacity(size);
    combine(universe, 0, size, &mut picked, found, &mut out);
    out
}

fn combine(
    universe: &[Literal],
    start: usize,
    size: usize,
    picked: &mut Vec<Literal>,
    found: &[Term],
    out: &mut Vec<Term>,
) {
    if picked.len() == size {
        if let Some(term) = Term::new(picked.iter().cloned()) {
            if term.len() == size {
                out.push(term);
            }
        }
        return;
    }
    let remaining = size - picked.len();
    for i in start..universe.len() {
        if universe.len() - i < remaining {
            break;
        }
        let lit = &universe[i];
        // prune whole subtrees: a prefix that already covers a found term
        // can only produce supersets of it
        let covered = found
            .iter()
            .any(|f| f.contains(lit) && f.literals().all(|l| l == lit || picked.contains(l)));
        if covered {
            continue;
        }
        picked.push(lit.clone());
        combine(universe, i + 1, size, picked, found, out);
        picked.pop();
    }
}

/// Which members of `terms` are inconsistent with the system, preserving
/// order; the sequential twin of the rayon scan used by the parallel build.
pub fn inconsistent_subset_seq(sys: &ArgumentationSystem, terms: &[Term]) -> Vec<Term> {
    terms
        .iter()
        .filter(|t| sys.is_inconsistent_term(t))
        .cloned()
        .collect()
}
