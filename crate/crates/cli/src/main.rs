use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gammalab_core::Error;

mod commands;
mod output;
mod properties;

use output::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "gammalab", version, about = "Two-sided Eulerian statistics, decomposition trees and gamma expansions")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "GAMMALAB_THREADS", default_value_t = 0)]
    threads: usize,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest n for full enumeration of S_n (hard cap 12).
    #[arg(long, global = true, default_value_t = commands::DEFAULT_MAX_N)]
    max_n: usize,

    /// Allow full enumeration for n = 11 and 12.
    #[arg(long, global = true)]
    long_run: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Eulerian,
    Simple,
    Separable,
    H5,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Enumerate,
    Rsk,
    Inversion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Gamma-positivity of simp_n for 4 <= n <= max-n.
    Conjecture,
    /// Simplified-tree factorization of A_n.
    Reduction,
    /// Generating-function identities to order max-n.
    System,
    /// Class structure of H(5).
    Lemma39,
    /// Seeded randomized checks.
    Properties,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Descent statistics and structural flags of a permutation.
    Stats {
        /// One-line notation, e.g. `246135` or `2 4 6 1 3 5`.
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Substitution decomposition tree, binary right chains and simplified tree.
    Decompose {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Equivalence class of a permutation in H(5) under the involutions.
    Class {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// Joint (des, ides) polynomial of a permutation family and its gamma expansion.
    Poly {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        n: usize,
        /// Defaults to the cheapest exact route for the target.
        #[arg(long, value_enum)]
        method: Option<Method>,
    },
    /// Run a verification suite up to --max-n.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Route for the conjecture sweep (inversion or enumerate).
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Seed for the randomized property suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub max_n: usize,
    pub long_run: bool,
}

enum Failure {
    Verification(Report),
    Core(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => 3,
        _ => 2,
    }
}

fn emit(report: &Report, cli: &Cli) -> Result<(), std::io::Error> {
    let text = report.render(cli.format);
    match &cli.output {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let cfg = RunConfig { max_n: cli.max_n, long_run: cli.long_run };
    let report = match &cli.command {
        Command::Stats { perm } => commands::stats(&perm.join(" "))?,
        Command::Decompose { perm } => commands::decompose(&perm.join(" "))?,
        Command::Class { perm } => commands::class(&perm.join(" "))?,
        Command::Poly { target, n, method } => commands::poly(cfg, *target, *n, *method)?,
        Command::Verify { suite, method, seed } => {
            let (report, passed) = commands::verify(cfg, *suite, *method, *seed)?;
            if !passed {
                return Err(Failure::Verification(report));
            }
            report
        }
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let result = run(&cli).and_then(|r| emit(&r, &cli).map_err(Failure::Io));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(report)) => {
            if let Err(e) = emit(&report, &cli) {
                eprintln!("error: {e}");
            }
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
