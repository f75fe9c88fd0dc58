//! quditfid: fidelity measures for mixed qudit states.
//!
//! Exit codes: 0 success / all checks passed, 1 property failure,
//! 2 input or usage error.

mod commands;
mod io;
mod output;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use output::Format;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    #[error("{path}: {source}")]
    Invalid {
        path: String,
        source: quditfid_core::Error,
    },

    #[error(transparent)]
    Core(#[from] quditfid_core::Error),

    #[error("{0}")]
    Usage(String),
}

/// Command outcome mapped to the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Parser)]
#[command(
    name = "quditfid",
    version,
    about = "Fidelity measures for mixed states of qudits",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one fidelity measure for a pair of matrix files.
    Compute(ComputeArgs),
    /// Run a built-in demonstration on the shipped fixture states.
    Demo(DemoArgs),
    /// Run property-check suites and report pass/fail.
    Check(CheckArgs),
    /// Randomized concavity experiment (report-only, always exits 0).
    Sweep(SweepArgs),
    /// Time the O(d²) overlap fidelity against the Uhlmann fidelity.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Uhlmann,
    Super,
    F2,
    Alt,
    Operator,
    Unitary,
    Thermal,
    Wick,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateMeasureArg {
    Uhlmann,
    Super,
    F2,
    Alt,
}

impl StateMeasureArg {
    pub fn core(self) -> quditfid_core::fidelity::StateMeasure {
        use quditfid_core::fidelity::StateMeasure as M;
        match self {
            StateMeasureArg::Uhlmann => M::Uhlmann,
            StateMeasureArg::Super => M::Super,
            StateMeasureArg::F2 => M::F2,
            StateMeasureArg::Alt => M::Alt,
        }
    }
}

#[derive(Args)]
struct ComputeArgs {
    /// Measure to evaluate.
    #[arg(long, value_enum)]
    measure: MeasureArg,
    /// First input matrix file.
    #[arg(long)]
    a: PathBuf,
    /// Second input matrix file.
    #[arg(long)]
    b: PathBuf,
    /// Inverse temperature (thermal measure only).
    #[arg(long)]
    beta: Option<f64>,
    /// Evolution time (wick measure only).
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    /// Write results to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DemoName {
    /// Four-measure table on the orthogonal rank-2 pair (d = 4).
    Orthogonal,
    /// Concavity violation of the overlap fidelity on a fixed triple.
    Concavity,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(value_enum)]
    name: DemoName,
    /// Single mixing weight (concavity demo).
    #[arg(long)]
    p: Option<f64>,
    /// Weight grid: an integer count of uniform points on [0,1], or a
    /// comma-separated list of explicit values (concavity demo).
    #[arg(long)]
    grid: Option<String>,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Axioms,
    Multiplicativity,
    Qubit,
    Bound,
    Wick,
    All,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    /// State measure for the axiom and multiplicativity suites.
    #[arg(long, value_enum, default_value = "alt")]
    measure: StateMeasureArg,
    /// State dimension.
    #[arg(long, default_value_t = 4)]
    d: usize,
    /// Random samples per check.
    #[arg(long, default_value_t = 500)]
    samples: u64,
    /// Master seed; every report is a pure function of it.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Overrides every per-axiom tolerance (axioms suite only).
    #[arg(long)]
    tol: Option<f64>,
    /// Comma-separated time grid for the wick suite.
    #[arg(long, default_value = "0.1,0.5,1.0,2.0")]
    grid: String,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    /// Hilbert-Schmidt random triples.
    Random,
    /// The fixed counterexample triple ρ1 = I/2, ρ2 = |0⟩⟨0|, σ = |1⟩⟨1|.
    Paper,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, default_value = "alt")]
    measure: StateMeasureArg,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    family: FamilyArg,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated dimensions, each at least 2.
    #[arg(long, default_value = "2,4,8,16")]
    dims: String,
    /// Timing repetitions per measure (median is reported).
    #[arg(long, default_value_t = 5)]
    reps: usize,
    /// Seed for the input-state pair.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, value_enum, default_value = "human")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Compute(args) => commands::compute::run(args),
        Command::Demo(args) => commands::demo::run(args),
        Command::Check(args) => commands::check::run(args),
        Command::Sweep(args) => commands::sweep::run(args),
        Command::Bench(args) => commands::bench::run(args),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass) => std::process::exit(0),
        Ok(Outcome::Fail) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}
