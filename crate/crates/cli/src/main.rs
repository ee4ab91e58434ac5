//! `rfold`: run identity suites on catalog geometries, decompose torus
//! fields into potentials, and list what is available.

mod decompose;
mod list;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rfold_core::Error;

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "rfold", version, about = "Exact r-fold-form identity checks and torus potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run identity checks on geometries.
    Verify(VerifyArgs),
    /// Decompose a Fourier field on the flat torus into potentials.
    Decompose(DecomposeArgs),
    /// List geometries, suites or checks.
    List(ListArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Geometry name, `@file`, or repeat for several (default: a standard set).
    #[arg(long = "geometry", value_name = "GEOMETRY")]
    pub geometries: Vec<String>,
    /// Suite to run; repeatable (default: all suites).
    #[arg(long = "suite", value_name = "SUITE")]
    pub suites: Vec<String>,
    /// Single check id to run; repeatable.
    #[arg(long = "check", value_name = "ID")]
    pub checks: Vec<String>,
    /// Metric jet order (default: enough for every selected check).
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Random inputs per shape for sampling checks.
    #[arg(long, default_value_t = 2)]
    pub samples: usize,
    /// Dimension of the flat and constant-curvature geometries.
    #[arg(long)]
    pub dim: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock times (the report is then no longer reproducible).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Any block shape: `2r` potentials.
    General,
    /// Symmetric double (p,p)-form: one pair of potentials.
    PpSymmetric,
    /// Antisymmetric double (p,p)-form: one pair of potentials.
    PpAntisymmetric,
    /// Riemann candidate: pair potentials and Ricci-level potentials.
    Riemann,
    /// Weyl candidate: the single (2,3)-form potential.
    Weyl,
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// Field file in the Fourier text format.
    #[arg(required_unless_present = "random", conflicts_with = "random")]
    pub field: Option<PathBuf>,
    /// Generate a seeded random real field instead of reading one.
    #[arg(long)]
    pub random: bool,
    #[arg(long, value_enum, default_value_t = Kind::General)]
    pub kind: Kind,
    /// Block ranks of a random general or (p,p) field, e.g. `2,2`.
    #[arg(long, default_value = "2,2")]
    pub ranks: String,
    /// Torus dimension of a random field.
    #[arg(long, default_value_t = 4)]
    pub dim: usize,
    /// Largest |k_j| of a random field.
    #[arg(long, default_value_t = 2)]
    pub bandlimit: u32,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Directory for the potential fields and the summary.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the input field, e.g. to keep a generated one.
    #[arg(long)]
    pub save_input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args)]
pub struct ListArgs {
    #[arg(value_enum)]
    pub what: ListWhat,
    /// Restrict `list checks` to one suite.
    #[arg(long)]
    pub suite: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ListWhat {
    Geometries,
    Suites,
    Checks,
}

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// Bad names, flags, files or inputs: exit 2.
    Usage(String),
    /// An identity or residual check failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Inconsistent(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

fn init_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("RFOLD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("RFOLD_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = init_threads().and_then(|()| match cli.command {
        Command::Verify(a) => verify::run(&a),
        Command::Decompose(a) => decompose::run(&a),
        Command::List(a) => list::run(&a),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("rfold: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("rfold: error: {msg}");
            ExitCode::from(2)
        }
    }
}
