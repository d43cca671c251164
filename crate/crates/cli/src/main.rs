//! `twosided`: analyze two-sided group digraphs, replay the worked examples,
//! and run the randomized theorem checks.
//!
//! Exit codes: 0 when every check passes, 1 on a failed check, 2 on a usage
//! or parse error.

mod analyze;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use twosided::digraph::build_two_sided;
use twosided::fixtures::{fixture, fixtures};
use twosided::group::{parse_group_spec, parse_subset};
use twosided::theory::{run_suite, SuiteConfig};
use twosided::Error;

#[derive(Parser)]
#[command(name = "twosided", version, about = "Two-sided group digraph analysis")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Check {
    Valency,
    Components,
    Cosets,
    Burnside,
    Theorem24,
    Retract,
}

#[derive(Subcommand)]
enum Command {
    /// Build 2S(G; L, R) and run the selected checks.
    Analyze {
        /// Group spec such as A4, D6, C3xC3 or semidirect:FILE.
        #[arg(long)]
        group: String,
        /// Comma-separated elements of L.
        #[arg(long)]
        left: String,
        /// Comma-separated elements of R.
        #[arg(long)]
        right: String,
        /// Checks to run.
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Check::Valency, Check::Components])]
        checks: Vec<Check>,
        /// Print the JSON record instead of text.
        #[arg(long)]
        json: bool,
        /// Also write the digraph in DOT format to this file.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Replay the worked examples.
    PaperExamples {
        /// Run a single fixture by id.
        #[arg(long, value_name = "ID")]
        only: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the randomized theorem checks.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        instances: usize,
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print 2S(G; L, R) in DOT format.
    Dot {
        #[arg(long)]
        group: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Write to this file instead of standard output.
        #[arg(long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

/// A run either completes with a pass flag or stops with an error.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistency(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit(record: &Value, json_out: bool, text: impl Fn(&Value) -> String) {
    if json_out {
        println!(
            "{}",
            serde_json::to_string_pretty(record).expect("JSON values serialize")
        );
    } else {
        print!("{}", text(record));
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    match cli.command {
        Command::Analyze {
            group,
            left,
            right,
            mut checks,
            json,
            dot,
        } => {
            let g = parse_group_spec(&group)?;
            let l = parse_subset(&g, &left)?;
            let r = parse_subset(&g, &right)?;
            checks.sort();
            checks.dedup();
            let record = analyze::analyze(&g, l, r, &checks, dot.is_some())?;
            if let (Some(path), Some(text)) = (&dot, record.get("dot").and_then(Value::as_str)) {
                write_file(path, text)?;
            }
            let mut record = record;
            if let Some(obj) = record.as_object_mut() {
                obj.remove("dot");
            }
            emit(&record, json, render::analysis_text);
            Ok(record["pass"].as_bool().unwrap_or(false))
        }
        Command::PaperExamples { only, json } => {
            let selected: Vec<_> = match &only {
                Some(id) => vec![fixture(id).ok_or_else(|| {
                    let ids: Vec<&str> = fixtures().iter().map(|f| f.id).collect();
                    Failure::Usage(format!("unknown fixture `{id}`; known: {}", ids.join(", ")))
                })?],
                None => fixtures().iter().collect(),
            };
            let results: Vec<Value> = selected
                .iter()
                .map(|f| {
                    let report = f.run();
                    json!({
                        "id": f.id,
                        "title": f.title,
                        "pass": report.all_pass(),
                        "records": report,
                    })
                })
                .collect();
            let pass = results.iter().all(|r| r["pass"] == true);
            let record = json!({ "fixtures": results, "pass": pass });
            emit(&record, json, render::fixtures_text);
            Ok(pass)
        }
        Command::Verify {
            seed,
            instances,
            max_order,
            json,
        } => {
            let report = run_suite(SuiteConfig {
                seed,
                instances,
                max_order,
            })?;
            let summary: Vec<Value> = report
                .summary()
                .into_iter()
                .map(|(check, (pass, total))| json!({"check": check, "pass": pass, "total": total}))
                .collect();
            let pass = report.all_pass();
            let record = json!({
                "config": report.config,
                "passed": report.passed,
                "total": report.total,
                "summary": summary,
                "outcomes": report.outcomes,
                "pass": pass,
            });
            emit(&record, json, render::verify_text);
            Ok(pass)
        }
        Command::Dot {
            group,
            left,
            right,
            output,
        } => {
            let g = parse_group_spec(&group)?;
            let l = parse_subset(&g, &left)?;
            let r = parse_subset(&g, &right)?;
            let text = build_two_sided(&g, &l, &r).to_dot();
            match output {
                Some(path) => write_file(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(true)
        }
    }
}

fn exit_code(outcome: &Result<bool, Failure>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) | Err(Failure::Check(_)) => 1,
        Err(Failure::Usage(_)) => 2,
    }
}

fn main() -> ExitCode {
    let outcome = run(Cli::parse());
    if let Err(Failure::Check(msg) | Failure::Usage(msg)) = &outcome {
        eprintln!("error: {msg}");
    }
    ExitCode::from(exit_code(&outcome))
}
