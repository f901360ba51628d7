//! Cross-validation harness: golden worked examples plus randomized
//! equivalence between the embedding pipeline and the fixpoint oracle.
//! Used both by the `selftest` subcommand and by the acceptance suite.

use crate::argumentation::Term;
use crate::fixtures::FIXTURES;
use crate::generator::{random_probe, random_theory, GeneratorConfig};
use crate::logic::{entails, equivalent, parse_formula, Formula, Literal, Proposition, TheorySet};
use crate::oracle::{self, OracleOutcome};
use crate::reasoner::TheoryClassification;
use crate::theory::DefaultTheory;
use crate::transform::{translate, ArgumentationSystem};

/// Statistics from one theory's cross-validation run.
#[derive(Clone, Copy, Debug, Default)]
pub struct CrossReport {
    pub extensions: usize,
    pub revisits: usize,
    pub probes: usize,
}

/// Deterministic seed mixing for independent per-item generators.
pub fn mix_seed(base: u64, a: u64, b: u64) -> u64 {
    let mut x = base ^ a.wrapping_mul(0x9E3779B97F4A7C15) ^ b.wrapping_mul(0xC2B2AE3D27D4EB4F);
    x ^= x >> 30;
    x = x.wrapping_mul(0xBF58476D1CE4E5B9);
    x ^= x >> 27;
    x = x.wrapping_mul(0x94D049BB133111EB);
    x ^ (x >> 31)
}

/// Runs the full pipeline and the oracle on one theory and checks that they
/// tell the same story: matching classification, a bijection between
/// extension marginals and oracle bases with equal generating defaults, no
/// permutation violations in the search, the exact size law of the
/// translation, and matching credulous/skeptical answers on every probe.
pub fn cross_validate(
    dt: &DefaultTheory,
    probe_seeds: &[u64],
    cfg: &GeneratorConfig,
) -> Result<CrossReport, String> {
    let sys = translate(dt);

    let expected_growth: usize = dt
        .defaults()
        .iter()
        .map(|d| d.justifications().len() + 2)
        .sum();
    if sys.theory().len() - dt.facts().len() != expected_growth {
        return Err(format!(
            "translation size law violated: |Xi| - |Sigma| = {} but defaults demand {expected_growth}",
            sys.theory().len() - dt.facts().len()
        ));
    }

    let (terms, trace) = sys.default_terms_traced();
    if !trace.permutation_violations.is_empty() {
        return Err(format!(
            "generating sequences disagree on revisited anchors: {:?}",
            trace.permutation_violations
        ));
    }
    if terms.as_slice() != sys.default_terms() {
        return Err("traced and cached searches disagree".into());
    }
    // the contradiction-backed search needs the full minimal-contradiction
    // scan, so it is only cross-checked on small assumption vocabularies
    if sys.assumptions().len() <= 12 {
        let via_mics = sys.default_terms_via_mics();
        if via_mics.as_slice() != sys.default_terms() {
            return Err(
                "contradiction-backed search disagrees with the solver-backed search".into(),
            );
        }
    }

    let oracle_out =
        oracle::extensions(dt, oracle::DEFAULT_MAX_DEFAULTS).map_err(|e| e.to_string())?;
    let classification = sys.classify();
    match (&classification, &oracle_out) {
        (TheoryClassification::InconsistentFacts, OracleOutcome::InconsistentFacts) => {}
        (TheoryClassification::InconsistentFacts, _) => {
            return Err("pipeline reports inconsistent facts, oracle does not".into())
        }
        (_, OracleOutcome::InconsistentFacts) => {
            return Err("oracle reports inconsistent facts, pipeline does not".into())
        }
        (_, OracleOutcome::Extensions(oracle_exts)) => {
            let handles = sys.extensions();
            if handles.len() != oracle_exts.len() {
                return Err(format!(
                    "pipeline finds {} extensions, oracle finds {}",
                    handles.len(),
                    oracle_exts.len()
                ));
            }
            let mut used = vec![false; oracle_exts.len()];
            for h in &handles {
                let matched = oracle_exts
                    .iter()
                    .enumerate()
                    .find(|(i, e)| !used[*i] && equivalent(h.marginal(), e.base()));
                match matched {
                    Some((i, e)) => {
                        used[i] = true;
                        if &h.generating_defaults() != e.generating_defaults() {
                            return Err(format!(
                                "generating defaults disagree: {:?} vs {:?}",
                                h.generating_defaults(),
                                e.generating_defaults()
                            ));
                        }
                    }
                    None => {
                        return Err(format!(
                            "extension {} has no equivalent oracle base",
                            h.default_term().anchor()
                        ))
                    }
                }
            }
            // pairwise inequivalence comes free from the bijection above:
            // every handle consumed a distinct oracle base
        }
    }

    let consistent_bases: Vec<&TheorySet> = match &oracle_out {
        OracleOutcome::InconsistentFacts => Vec::new(),
        OracleOutcome::Extensions(exts) => exts.iter().map(|e| e.base()).collect(),
    };
    for &seed in probe_seeds {
        let probe = random_probe(seed, cfg);
        let cred = sys.credulous(&probe).map_err(|e| e.to_string())?;
        let skep = sys.skeptical(&probe).map_err(|e| e.to_string())?;
        let oracle_cred = consistent_bases.iter().any(|b| entails(b, &probe));
        let oracle_skep = consistent_bases.iter().all(|b| entails(b, &probe));
        if cred.answer != oracle_cred {
            return Err(format!(
                "credulous({probe}) = {} but oracle says {oracle_cred}",
                cred.answer
            ));
        }
        if skep.answer != oracle_skep {
            return Err(format!(
                "skeptical({probe}) = {} but oracle says {oracle_skep}",
                skep.answer
            ));
        }
    }

    Ok(CrossReport {
        extensions: sys.default_terms().len(),
        revisits: trace.revisits,
        probes: probe_seeds.len(),
    })
}

fn expect(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn classification_of(name: &str) -> Result<(DefaultTheory, ArgumentationSystem, String), String> {
    let fixture = crate::fixtures::by_name(name).ok_or(format!("missing fixture {name}"))?;
    let dt = DefaultTheory::parse(fixture.source).map_err(|e| format!("{name}: {e}"))?;
    let sys = translate(&dt);
    let c = sys.classify().to_string();
    Ok((dt, sys, c))
}

fn assumption_term(lits: &[(&str, bool)]) -> Term {
    Term::new(lits.iter().map(|(name, pos)| Literal {
        prop: Proposition::assumption(name),
        positive: *pos,
    }))
    .expect("distinct assumption literals")
}

/// The golden expectations for every embedded fixture, each cross-validated
/// against the oracle on top of its specific checks.
pub fn fixture_golden() -> Result<Vec<&'static str>, String> {
    let cfg = GeneratorConfig::default();
    let mut checked = Vec::new();
    for fixture in FIXTURES {
        let (dt, sys, classification) = classification_of(fixture.name)?;
        let fail = |msg: String| format!("{}: {msg}", fixture.name);
        match fixture.name {
            "two_extensions" => {
                expect(
                    classification == "extensions(2)",
                    fail(classification.clone()),
                )?;
                let handles = sys.extensions();
                let first: TheorySet = ["b -> !a & !c", "a", "c"]
                    .iter()
                    .map(|s| parse_formula(s).unwrap())
                    .collect();
                let second: TheorySet = ["b -> !a & !c", "b"]
                    .iter()
                    .map(|s| parse_formula(s).unwrap())
                    .collect();
                expect(
                    equivalent(handles[0].marginal(), &first)
                        && equivalent(handles[1].marginal(), &second),
                    fail("extension marginals differ from the expected bases".into()),
                )?;
            }
            "self_defeating" | "contrary_justification" | "defeated_by_consequence" => {
                expect(
                    classification == "no-extension",
                    fail(classification.clone()),
                )?;
            }
            "blocked_justification" => {
                expect(
                    classification == "unique-trivial",
                    fail(classification.clone()),
                )?;
                let handle = &sys.extensions()[0];
                let facts: TheorySet = ["p", "q"]
                    .iter()
                    .map(|s| parse_formula(s).unwrap())
                    .collect();
                expect(
                    equivalent(handle.marginal(), &facts),
                    fail("trivial extension differs from the facts".into()),
                )?;
            }
            "disjunctive_pair" => {
                expect(
                    classification == "unique-trivial",
                    fail(classification.clone()),
                )?;
                let xi: Vec<String> = sys.theory().iter().map(|f| f.to_string()).collect();
                let expected = [
                    "e | o",
                    "@d1.p -> !e",
                    "@d1.j1 -> r",
                    "@d1.c -> r",
                    "@d2.p -> !o",
                    "@d2.j1 -> r",
                    "@d2.c -> r",
                ];
                expect(xi == expected, fail(format!("translation drifted: {xi:?}")))?;
            }
            "disjunctive_single" => {
                expect(
                    classification == "unique-trivial",
                    fail(classification.clone()),
                )?;
                expect(
                    sys.minimal_contradictions().is_empty(),
                    fail("expected no minimal contradictions".into()),
                )?;
            }
            "chain" => {
                expect(
                    classification == "extensions(1)",
                    fail(classification.clone()),
                )?;
                let expected_mics = vec![
                    assumption_term(&[("d1.c", true), ("d2.j1", true)]),
                    assumption_term(&[("d1.p", true)]),
                    assumption_term(&[("d2.c", true), ("d3.j1", true)]),
                    assumption_term(&[("d2.p", true)]),
                    assumption_term(&[("d3.p", true)]),
                ];
                expect(
                    sys.minimal_contradictions() == expected_mics.as_slice(),
                    fail("minimal contradictions drifted".into()),
                )?;
                let terms = sys.default_terms();
                expect(
                    terms.len() == 1
                        && terms[0].anchor() == &assumption_term(&[("d1.c", true), ("d3.c", true)]),
                    fail("default terms drifted".into()),
                )?;
                let marginal: Vec<String> = sys.extensions()[0]
                    .marginal()
                    .iter()
                    .map(|f| f.to_string())
                    .collect();
                expect(
                    marginal == ["!d", "!f"],
                    fail(format!("marginal drifted: {marginal:?}")),
                )?;
            }
            "mutual_exclusion" => {
                expect(
                    classification == "extensions(2)",
                    fail(classification.clone()),
                )?;
                let ask = |s: &str| parse_formula(s).unwrap();
                let cred = |s: &str| sys.credulous(&ask(s)).unwrap().answer;
                let skep = |s: &str| sys.skeptical(&ask(s)).unwrap().answer;
                expect(
                    cred("b") && cred("c"),
                    fail("b, c should be credulous".into()),
                )?;
                expect(
                    skep("b | c") && skep("d"),
                    fail("b | c and d should be skeptical".into()),
                )?;
                expect(!skep("b"), fail("b must not be skeptical".into()))?;
            }
            "inconsistent_facts" => {
                expect(
                    classification == "inconsistent-facts",
                    fail(classification.clone()),
                )?;
                expect(
                    sys.minimal_contradictions() == [Term::top()],
                    fail("expected the top marker".into()),
                )?;
            }
            other => return Err(format!("no golden expectation for fixture {other}")),
        }
        cross_validate(&dt, &[1, 2, 3], &cfg).map_err(|e| format!("{}: {e}", fixture.name))?;
        checked.push(fixture.name);
    }
    Ok(checked)
}

/// Golden checks on hand-built argumentation systems that do not come from
/// any default theory: minimal contradictions of clashing unit implications
/// and supporting arguments of an exclusive pair.
pub fn handcrafted_golden() -> Result<(), String> {
    let imp = |a: &str, f: &str| {
        Formula::implies(
            Formula::atom(Proposition::assumption(a)),
            parse_formula(f).unwrap(),
        )
    };

    let clashing: TheorySet = [
        imp("a1", "p"),
        imp("a2", "q"),
        parse_formula("!p").unwrap(),
        parse_formula("!q").unwrap(),
    ]
    .into_iter()
    .collect();
    let sys = ArgumentationSystem::new(
        clashing,
        [Proposition::assumption("a1"), Proposition::assumption("a2")],
    );
    expect(
        sys.minimal_contradictions()
            == [
                assumption_term(&[("a1", true)]),
                assumption_term(&[("a2", true)]),
            ],
        "clashing units: minimal contradictions drifted",
    )?;

    let exclusive: TheorySet = [
        imp("a1", "p"),
        imp("a2", "q"),
        parse_formula("p -> !q").unwrap(),
    ]
    .into_iter()
    .collect();
    let sys = ArgumentationSystem::new(
        exclusive,
        [Proposition::assumption("a1"), Proposition::assumption("a2")],
    );
    expect(
        sys.supporting_arguments(&parse_formula("p").unwrap())
            == [assumption_term(&[("a1", true), ("a2", false)])],
        "exclusive pair: supporting arguments for p drifted",
    )?;
    expect(
        sys.supporting_arguments(&parse_formula("q").unwrap())
            == [assumption_term(&[("a1", false), ("a2", true)])],
        "exclusive pair: supporting arguments for q drifted",
    )?;
    Ok(())
}

/// Summary of a randomized run.
#[derive(Clone, Copy, Debug)]
pub struct RandomReport {
    pub theories: usize,
    pub probes: usize,
    pub revisits: usize,
}

/// Cross-validates `theories` random theories with `probes_per_theory`
/// probes each; any disagreement is an error.
pub fn randomized(
    seed: u64,
    theories: usize,
    probes_per_theory: usize,
) -> Result<RandomReport, String> {
    let cfg = GeneratorConfig::default();
    let mut probes = 0usize;
    let mut revisits = 0usize;
    for i in 0..theories {
        let dt = random_theory(mix_seed(seed, i as u64, 0), &cfg);
        let probe_seeds: Vec<u64> = (1..=probes_per_theory)
            .map(|j| mix_seed(seed, i as u64, j as u64))
            .collect();
        let report = cross_validate(&dt, &probe_seeds, &cfg)
            .map_err(|e| format!("theory {i} (seed {seed}): {e}\n{dt}"))?;
        probes += report.probes;
        revisits += report.revisits;
    }
    Ok(RandomReport {
        theories,
        probes,
        revisits,
    })
}
