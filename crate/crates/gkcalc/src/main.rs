//! Command-line front end: run a verification suite and print a
//! human-readable summary, optionally writing the full JSON report.
//!
//! Exit codes: 0 all checks pass, 1 at least one check fails, 2 usage error
//! (unknown model, unsupported matrix size), 3 input data fails validation.

use clap::{Parser, Subcommand};
use gkcalc::{lie, models, report};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "gkcalc", about = "Exact verification of generalized Kahler structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for all randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized checks.
    #[arg(long, global = true, default_value_t = 16)]
    trials: usize,
    /// Write the full JSON report to this path.
    #[arg(long, global = true)]
    json: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one of the built-in models.
    Verify {
        /// Model name: flat, hopf-odd, hopf-even-plus, hopf-even-minus.
        model: String,
    },
    /// Verify the Clifford-algebraic structure on a compact Lie algebra.
    Lie {
        /// Built-in name (su2xu1, su3) or a path to a JSON root-data file.
        input: String,
    },
    /// Cross-module property checks on random data.
    Props,
    /// Floating-point checks for the bounded matrix domain.
    Fiber {
        /// Matrix size (1 or 2).
        #[arg(long)]
        n: usize,
    },
}

fn finish(r: report::Report, json: Option<std::path::PathBuf>) -> ExitCode {
    r.print_human();
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, r.to_json()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if r.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify { model } => match models::model(&model) {
            Some(m) => finish(report::verify_model(&m, cli.seed, cli.trials), cli.json),
            None => {
                eprintln!(
                    "error: unknown model '{model}' (expected one of: {})",
                    models::MODEL_NAMES.join(", ")
                );
                ExitCode::from(2)
            }
        },
        Command::Lie { input } => {
            let (data, name) = if let Some(d) = lie::builtin(&input) {
                (d, input.clone())
            } else if input.ends_with(".json") {
                let text = match std::fs::read_to_string(&input) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: cannot read {input}: {e}");
                        return ExitCode::from(2);
                    }
                };
                match lie::from_json(&text) {
                    Ok(d) => (d, "file".to_string()),
                    Err(e) => {
                        eprintln!("error: invalid root data: {e}");
                        return ExitCode::from(3);
                    }
                }
            } else {
                eprintln!("error: unknown algebra '{input}' (expected su2xu1, su3, or a .json path)");
                return ExitCode::from(2);
            };
            if let Err(e) = data.validate() {
                eprintln!("error: root data fails validation: {e}");
                return ExitCode::from(3);
            }
            match report::lie_suite(data, &name, cli.seed) {
                Ok(r) => finish(r, cli.json),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(3)
                }
            }
        }
        Command::Props => finish(report::props_suite(cli.seed, cli.trials), cli.json),
        Command::Fiber { n } => {
            if !(1..=2).contains(&n) {
                eprintln!("error: matrix size {n} unsupported (expected 1 or 2)");
                return ExitCode::from(2);
            }
            finish(report::fiber_report(n, cli.trials.max(5), cli.seed), cli.json)
        }
    }
}
