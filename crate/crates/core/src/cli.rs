//! Command-line dispatch. Exit codes: 0 all requested properties hold,
//! 1 a requested property fails, 2 parse/validation error, 3 soundness
//! violation (always wins).

use std::fs;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::correspondence::{Correspondence, MonotonicityProperty, ValueCondition, Verdict};
use crate::error::{Error, Result};
use crate::fixpoint;
use crate::format;
use crate::oracle::fixtures::{fixture, FIXTURE_NAMES};
use crate::oracle::fuzz::{default_spec, fuzz};
use crate::oracle::theorems::{validate, ValidateOptions};
use crate::oracle::Instance;
use crate::report::TheoremId;

#[derive(Parser)]
#[command(name = "latfix", version, about = "finite lattice fixed-point and equilibrium toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a poset: lattice / complete lattice / chain-complete, with witnesses.
    CheckPoset { file: String },
    /// Check monotonicity and value-shape properties of a correspondence.
    CheckCorrespondence {
        file: String,
        /// Comma-separated property names, e.g. `ascending,v-ascending,nonempty`.
        #[arg(long, value_delimiter = ',', required = true)]
        props: Vec<String>,
    },
    /// Enumerate fixed points and describe their order structure.
    Fix { file: String },
    /// Run a theorem's hypothesis checklist and conclusion check.
    Validate {
        file: String,
        #[arg(long)]
        theorem: String,
        /// Validate the order-dual form where the theorem has one.
        #[arg(long)]
        dual: bool,
    },
    /// Enumerate pure Nash equilibria of a lattice game.
    Equilibria { file: String },
    /// Fuzz a theorem validator over seeded random instances.
    Fuzz {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List built-in fixtures, or emit one as an instance file.
    Fixtures {
        #[arg(long)]
        name: Option<String>,
        /// Print the fixture in the instance file format.
        #[arg(long)]
        emit: bool,
    },
}

/// Loads an instance from a file path, falling back to a fixture name.
fn load(spec: &str) -> Result<Instance> {
    if Path::new(spec).is_file() {
        let text = fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return format::parse_str(&text);
    }
    fixture(spec)
}

fn correspondence(instance: Instance) -> Result<Correspondence> {
    match instance {
        Instance::Correspondence(f) => Ok(f),
        Instance::Game(g) => g.joint_best_reply(),
        Instance::Poset(_) => Err(Error::IncompatibleInstance(
            "a correspondence (or game) is required".into(),
        )),
    }
}

/// Prints a line to stdout, ignoring broken pipes (e.g. `| head`).
fn out(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn emit(value: &impl serde::Serialize) {
    out(&serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn check_prop(f: &Correspondence, prop: &str) -> Result<Verdict> {
    if let Ok(m) = prop.parse::<MonotonicityProperty>() {
        return f.check_monotonicity(m);
    }
    if let Ok(v) = prop.parse::<ValueCondition>() {
        return f.check_values(v);
    }
    Err(Error::Parse(format!("unknown property `{prop}`")))
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::CheckPoset { file } => {
            let poset = match load(&file)? {
                Instance::Poset(p) => p,
                Instance::Correspondence(f) => f.source().clone(),
                Instance::Game(_) => {
                    return Err(Error::IncompatibleInstance("a poset is required".into()))
                }
            };
            emit(&poset.classify());
            Ok(0)
        }
        Command::CheckCorrespondence { file, props } => {
            let f = correspondence(load(&file)?)?;
            let mut all_hold = true;
            let mut checks = Vec::new();
            for prop in &props {
                let verdict = check_prop(&f, prop)?;
                all_hold &= verdict.holds;
                checks.push(json!({ "property": prop, "verdict": verdict }));
            }
            emit(&checks);
            Ok(if all_hold { 0 } else { 1 })
        }
        Command::Fix { file } => {
            let f = correspondence(load(&file)?)?;
            emit(&fixpoint::fix_structure(&f)?);
            Ok(0)
        }
        Command::Validate { file, theorem, dual } => {
            let theorem: TheoremId = theorem.parse()?;
            let instance = load(&file)?;
            let opts = ValidateOptions { dual, ..ValidateOptions::default() };
            let report = validate(theorem, &instance, &opts)?;
            emit(&report);
            Ok(if !report.sound {
                3
            } else if report.hypotheses_hold && report.conclusion.holds {
                0
            } else {
                1
            })
        }
        Command::Equilibria { file } => {
            let game = match load(&file)? {
                Instance::Game(g) => g,
                _ => return Err(Error::IncompatibleInstance("a game is required".into())),
            };
            emit(&game.nash_equilibria()?);
            Ok(0)
        }
        Command::Fuzz { theorem, count, max_size, seed } => {
            let theorem: TheoremId = theorem.parse()?;
            let spec = default_spec(theorem, max_size, seed);
            let report = fuzz(theorem, count, &spec)?;
            let violations = !report.violations.is_empty();
            emit(&report);
            Ok(if violations { 3 } else { 0 })
        }
        Command::Fixtures { name, emit: emit_file } => {
            match name {
                None => {
                    emit(&FIXTURE_NAMES);
                    Ok(0)
                }
                Some(name) => {
                    let instance = fixture(&name)?;
                    if emit_file {
                        out(&format::to_string(&instance));
                    } else {
                        let kind = match instance {
                            Instance::Poset(_) => "poset",
                            Instance::Correspondence(_) => "correspondence",
                            Instance::Game(_) => "game",
                        };
                        emit(&json!({ "name": name, "kind": kind }));
                    }
                    Ok(0)
                }
            }
        }
    }
}

/// Parses `args` and runs one command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version itself; bad usage is a parse error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_fixture_by_name() {
        let code = run(["latfix", "validate", "example-2.7", "--theorem", "thm-1.9"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn failing_property_exits_one() {
        let code = run([
            "latfix",
            "check-correspondence",
            "example-2.3",
            "--props",
            "upper-v-ascending",
        ]);
        assert_eq!(code, 1);
    }

    #[test]
    fn unknown_theorem_exits_two() {
        let code = run(["latfix", "validate", "example-2.7", "--theorem", "nope"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn equilibria_on_game_fixture() {
        let code = run(["latfix", "equilibria", "game-7.7"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn fixtures_listing_and_emit() {
        assert_eq!(run(["latfix", "fixtures"]), 0);
        assert_eq!(run(["latfix", "fixtures", "--name", "example-2.7", "--emit"]), 0);
        assert_eq!(run(["latfix", "fixtures", "--name", "nope"]), 2);
    }
}
