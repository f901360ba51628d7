//! `defarg`: command-line front end for the default-logic reasoner.
//!
//! Exit codes: 0 on success (for `query`, when the consequence holds),
//! 1 on usage/parse errors, 2 on an internal invariant violation during
//! `selftest`, 10 when a queried consequence does not hold.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use defarg::logic::parse_formula;
use defarg::oracle;
use defarg::reasoner::TheoryClassification;
use defarg::selftest;
use defarg::theory::DefaultTheory;
use defarg::transform::{translate, ArgumentationSystem};

#[derive(Parser)]
#[command(
    name = "defarg",
    version,
    about = "Default-logic reasoning over propositional argumentation systems"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the argumentation system of a theory
    Translate { file: PathBuf },
    /// Print the minimal contradictions of the translated theory
    Mics { file: PathBuf },
    /// Print the default terms with one generating sequence each
    Terms { file: PathBuf },
    /// Classify the theory and list its extensions
    Extensions {
        file: PathBuf,
        /// Materialize the extension marginals
        #[arg(long)]
        marginal: bool,
    },
    /// Decide whether a formula is a credulous or skeptical consequence
    Query {
        file: PathBuf,
        /// Consequence mode
        #[arg(long, value_enum)]
        mode: Mode,
        /// Formula in the same grammar as theory files
        formula: String,
    },
    /// Print the classification only
    Check { file: PathBuf },
    /// Brute-force extensions straight from the fixpoint definition
    Oracle {
        file: PathBuf,
        /// Refuse theories with more defaults than this
        #[arg(long, default_value_t = oracle::DEFAULT_MAX_DEFAULTS)]
        max_defaults: usize,
    },
    /// Golden worked examples plus randomized reasoner/oracle equivalence
    Selftest {
        /// Seed for the randomized phase
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Credulous,
    Skeptical,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1u8,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn load(path: &Path) -> Result<(DefaultTheory, ArgumentationSystem), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let dt = DefaultTheory::parse(&text).map_err(|e| format!("{}:{e}", path.display()))?;
    let sys = translate(&dt);
    Ok((dt, sys))
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Translate { file } => {
            let (_, sys) = load(&file)?;
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&sys.to_json()).unwrap());
            } else {
                println!("xi:");
                for f in sys.theory() {
                    println!("  fact {f}.");
                }
                println!("assumptions:");
                for record in sys.registry().records() {
                    let js: Vec<String> = record
                        .justificational()
                        .iter()
                        .map(|a| a.to_string())
                        .collect();
                    println!(
                        "  {}: p = {}, j = [{}], c = {}",
                        record.default_name(),
                        record.prerequisitional(),
                        js.join(", "),
                        record.consequential()
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Mics { file } => {
            let (_, sys) = load(&file)?;
            let mics = sys.minimal_contradictions();
            if cli.json {
                let arr: Vec<serde_json::Value> = mics.iter().map(|t| t.to_json()).collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "mics": arr })).unwrap()
                );
            } else {
                println!("minimal contradictions ({}):", mics.len());
                for t in mics {
                    println!("{t}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Terms { file } => {
            let (_, sys) = load(&file)?;
            let terms = sys.default_terms();
            if cli.json {
                let arr: Vec<serde_json::Value> = terms
                    .iter()
                    .map(|t| {
                        json!({
                            "term": t.anchor().to_json(),
                            "generatingSequence": t.generating_sequence(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "defaultTerms": arr })).unwrap()
                );
            } else {
                println!("default terms ({}):", terms.len());
                for t in terms {
                    println!(
                        "{} via [{}]",
                        t.anchor(),
                        t.generating_sequence().join(", ")
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Extensions { file, marginal } => {
            let (_, sys) = load(&file)?;
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&sys.report_json(marginal)).unwrap()
                );
            } else {
                print_extension_report(&sys, marginal);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Query {
            file,
            mode,
            formula,
        } => {
            let (_, sys) = load(&file)?;
            let hypothesis = parse_formula(&formula).map_err(|e| e.to_string())?;
            let outcome = match mode {
                Mode::Credulous => sys.credulous(&hypothesis),
                Mode::Skeptical => sys.skeptical(&hypothesis),
            }
            .map_err(|e| e.to_string())?;
            let warn = matches!(
                outcome.classification,
                TheoryClassification::NoExtension | TheoryClassification::InconsistentFacts
            );
            if cli.json {
                let mut v = json!({
                    "mode": match mode {
                        Mode::Credulous => "credulous",
                        Mode::Skeptical => "skeptical",
                    },
                    "formula": hypothesis.to_string(),
                    "classification": outcome.classification.to_string(),
                    "answer": outcome.answer,
                });
                if warn {
                    v["warning"] = json!("no-extensions");
                }
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            } else {
                if warn {
                    println!("warning: no extensions");
                }
                println!("{}", if outcome.answer { "yes" } else { "no" });
            }
            Ok(if outcome.answer {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(10)
            })
        }
        Command::Check { file } => {
            let (_, sys) = load(&file)?;
            let classification = sys.classify();
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(
                        &json!({ "classification": classification.to_string() })
                    )
                    .unwrap()
                );
            } else {
                println!("{classification}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { file, max_defaults } => {
            let (dt, _) = load(&file)?;
            let outcome = oracle::extensions(&dt, max_defaults).map_err(|e| e.to_string())?;
            let report = oracle::report_json(&dt, &outcome);
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&report).unwrap());
            } else {
                println!(
                    "classification: {}",
                    report["classification"].as_str().unwrap()
                );
                for (i, e) in report["extensions"].as_array().unwrap().iter().enumerate() {
                    let defaults: Vec<&str> = e["generatingDefaults"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect();
                    let term: Vec<&str> = e["defaultTerm"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect();
                    println!(
                        "extension {}: defaults [{}], term {{{}}}",
                        i + 1,
                        defaults.join(", "),
                        term.join(", ")
                    );
                    let marginal: Vec<&str> = e["marginal"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap())
                        .collect();
                    println!("  marginal: {}", marginal.join(", "));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Selftest { seed } => run_selftest(seed, cli.json),
    }
}

fn print_extension_report(sys: &ArgumentationSystem, with_marginals: bool) {
    println!("classification: {}", sys.classify());
    if sys.classify() == TheoryClassification::InconsistentFacts {
        return;
    }
    for (i, term) in sys.default_terms().iter().enumerate() {
        let defaults: Vec<String> = term.generating_defaults().into_iter().collect();
        println!(
            "extension {}: defaults [{}], term {}",
            i + 1,
            defaults.join(", "),
            term.anchor()
        );
        if with_marginals {
            let handle = sys.extension_of(term).expect("term from own search");
            let clauses: Vec<String> = handle.marginal().iter().map(|f| f.to_string()).collect();
            println!("  marginal: {}", clauses.join(", "));
        }
    }
}

const SELFTEST_THEORIES: usize = 100;
const SELFTEST_PROBES: usize = 10;

fn run_selftest(seed: u64, json: bool) -> Result<ExitCode, String> {
    let mut failure: Option<String> = None;
    let mut fixtures_checked = 0usize;

    match selftest::fixture_golden() {
        Ok(names) => {
            fixtures_checked = names.len();
            if !json {
                for name in names {
                    println!("golden: {name} ok");
                }
            }
        }
        Err(e) => failure = Some(e),
    }
    if failure.is_none() {
        match selftest::handcrafted_golden() {
            Ok(()) => {
                if !json {
                    println!("golden: handcrafted-systems ok");
                }
            }
            Err(e) => failure = Some(e),
        }
    }
    let mut random_report = None;
    if failure.is_none() {
        match selftest::randomized(seed, SELFTEST_THEORIES, SELFTEST_PROBES) {
            Ok(report) => {
                random_report = Some(report);
                if !json {
                    println!(
                        "random: {} theories, {} probes, 0 disagreements (seed {seed})",
                        report.theories, report.probes
                    );
                }
            }
            Err(e) => failure = Some(e),
        }
    }

    match failure {
        None => {
            if json {
                let report = random_report.expect("randomized phase ran");
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "fixtures": fixtures_checked,
                        "handcrafted": true,
                        "theories": report.theories,
                        "probes": report.probes,
                        "disagreements": 0,
                        "seed": seed,
                        "ok": true,
                    }))
                    .unwrap()
                );
            } else {
                println!("selftest: ok");
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(message) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "seed": seed,
                        "ok": false,
                        "failure": message,
                    }))
                    .unwrap()
                );
            } else {
                println!("FAIL: {message}");
            }
            Ok(ExitCode::from(2))
        }
    }
}
