//! `entmono`: analyze states against monogamy/polygamy bounds, regenerate
//! the example figure data, run randomized sweeps, and cross-check closed
//! forms against the convex-roof optimizer.

mod analyze;
mod figure;
mod oracle;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use entmono_core::MeasureKind;

use output::Grid;

#[derive(Parser)]
#[command(name = "entmono", version, about = "Entanglement monogamy toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate every bound on one state.
    Analyze(AnalyzeArgs),
    /// Emit the curves behind one of the four worked examples.
    Figure(FigureArgs),
    /// Randomized check of the inequalities on Haar-random pure states.
    Sweep(SweepArgs),
    /// Compare two-qubit closed forms with the convex-roof optimizer.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum MeasureArg {
    Concurrence,
    Coa,
    Negativity,
    Scren,
    Screnoa,
}

impl MeasureArg {
    fn kind(self) -> MeasureKind {
        match self {
            MeasureArg::Concurrence => MeasureKind::Concurrence,
            MeasureArg::Coa => MeasureKind::ConcurrenceOfAssistance,
            MeasureArg::Negativity => MeasureKind::Negativity,
            MeasureArg::Scren => MeasureKind::Scren,
            MeasureArg::Screnoa => MeasureKind::ScrenOa,
        }
    }
}

#[derive(Args)]
pub struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
#[group(id = "input", required = true, multiple = false)]
pub struct InputArgs {
    #[arg(long, group = "input")]
    state: Option<PathBuf>,
    #[arg(long, group = "input", value_parser = clap::value_parser!(u8).range(1..=4))]
    example: Option<u8>,
}

#[derive(Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "concurrence")]
    measure: MeasureArg,
    #[arg(long, default_value_t = 0)]
    focus: usize,
    #[arg(long)]
    gamma: Option<f64>,
    #[arg(long, value_parser = output::parse_grid, conflicts_with_all = ["alpha", "beta"])]
    grid: Option<Grid>,
    #[arg(long, conflicts_with = "beta")]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// Keep partner order instead of sorting pair values.
    #[arg(long)]
    unsorted: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    example: u8,
    #[arg(long, value_parser = output::parse_grid)]
    grid: Option<Grid>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct SweepArgs {
    /// Local dimensions; every pair must be two qubits.
    #[arg(long, value_delimiter = ',', default_value = "2,2,2,2")]
    dims: Vec<usize>,
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Single monogamy exponent instead of {2, 2.5, 3}.
    #[arg(long)]
    alpha: Option<f64>,
    /// Single polygamy exponent instead of {0.5, 1, 1.5, 2}.
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
pub struct OracleArgs {
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..=4))]
    rank: u64,
    #[arg(long, default_value_t = 64)]
    restarts: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[command(flatten)]
    common: Common,
}

/// Error with the process exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<entmono_core::Error> for CliError {
    fn from(e: entmono_core::Error) -> Self {
        Self {
            code: if e.is_input_error() { 2 } else { 3 },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::input(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze::run(&a),
        Command::Figure(a) => figure::run(&a),
        Command::Sweep(a) => sweep::run(&a),
        Command::Oracle(a) => oracle::run(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("entmono: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
