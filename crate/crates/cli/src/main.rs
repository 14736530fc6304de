//! Command-line front end: validate locale descriptions, run law suites,
//! convert between uniformity presentations, compute reflections and
//! completions, decide lifting, and evaluate exact arithmetic.
//!
//! Reports are byte-identical for identical inputs; wall-clock timing goes
//! to stderr only. Exit codes: 0 all checks pass, 1 a check failed, 2 usage
//! or parse error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use uniloc_core::error::CoreError;

mod report;
mod run;

#[derive(Parser)]
#[command(
    name = "uniloc",
    about = "finite frames, uniform structures, completions, exact arithmetic",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a locale description and run law suites.
    Check {
        file: PathBuf,
        /// Comma-separated selection from: uniformly-below, conucleus,
        /// roundtrip. Defaults to all three.
        #[arg(long, value_delimiter = ',')]
        laws: Vec<String>,
    },
    /// Convert between cover and entourage presentations.
    Convert {
        file: PathBuf,
        /// Write the converted structure here instead of stdout.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Compute the uniform reflection.
    Reflect {
        file: PathBuf,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Complete the structure and report the witnesses.
    Complete {
        file: PathBuf,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Print the Cauchy-filter presentation and its classifying frame.
    Cauchy {
        file: PathBuf,
        /// Include the regularity relations.
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Decide whether a locale map lifts to the completions.
    Lift {
        /// Source structure (the map's domain locale).
        source: PathBuf,
        /// Target structure (the map's codomain locale).
        target: PathBuf,
        /// Map file sending each target irreducible to a source element.
        map: PathBuf,
    },
    /// Evaluate an exact arithmetic expression.
    Calc {
        /// Expression such as `1/3 + 1/6 @eps 1/1000` or `2 + 4 @padic 5 2`.
        expression: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = run::dispatch(cli.command);
    eprintln!("elapsed: {:?}", start.elapsed());
    match outcome {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(usage_code(&e))
        }
    }
}

fn usage_code(e: &CoreError) -> u8 {
    match e {
        CoreError::Parse { .. }
        | CoreError::NonpositivePrecision(_)
        | CoreError::NotPrime(_)
        | CoreError::UnknownGenerator { .. } => 2,
        CoreError::Unsupported(msg) if msg.starts_with("unknown law") => 2,
        _ => 1,
    }
}
