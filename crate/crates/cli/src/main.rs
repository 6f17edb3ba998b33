//! `unireg` command-line tool.
//!
//! Exit codes: 0 success (or regular under `check --strict`), 1 singular under
//! `check --strict`, 2 invalid input, 3 internal cross-check failure.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "unireg",
    version,
    about = "Exact regularity and determinants of uniform polynomial matrices"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Read the spec (or a matrix, as JSON or CSV) from FILE; `-` reads stdin.
    #[arg(long, global = true, value_name = "FILE")]
    pub input: Option<PathBuf>,
    /// Worker threads for the expansion route.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: u16,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Oracle,
    Expansion,
    Reduction,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Expansion,
    Oracle,
}

/// Inline description of `A(k; x, y, r, ℓ)`.
#[derive(Debug, Args)]
pub struct SpecArgs {
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Comma-separated scalars, e.g. `1,-2,3/4`.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Use x_i = N + (i-1)k - 1, y_i = 1, r = (1, ..., k).
    #[arg(long)]
    pub constant_gap: bool,
    #[arg(long = "N", value_name = "N", allow_hyphen_values = true)]
    pub start: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the matrix.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Exact determinant by one or all routes.
    Det {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: Method,
    },
    /// Decide regularity.
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        /// Exit 0 when regular and 1 when singular.
        #[arg(long)]
        strict: bool,
    },
    /// Evaluate or expand a Schur polynomial.
    Schur {
        #[arg(long)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "expand")]
        points: Option<String>,
        #[arg(long, requires = "k")]
        expand: bool,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Ordinary or generalized Vandermonde determinant.
    Vandermonde {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Number of semistandard tableaux of a shape with a given content.
    Gamma {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Alternating binomial sum of a polynomial against its derivative.
    FiniteDiff {
        #[arg(long)]
        ell: usize,
        /// Coefficients a0,a1,... of the polynomial.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Time a determinant route over a (k, ell) grid.
    Bench {
        #[arg(long, value_enum, default_value = "expansion")]
        suite: Suite,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_k: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        max_ell: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
}

/// Payload for stdout plus the exit status and an optional diagnostic.
pub struct Outcome {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Outcome {
    pub fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: None,
            code: 0,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli).unwrap_or_else(|CliError::Invalid(msg)| Outcome {
        stdout: String::new(),
        stderr: Some(msg),
        code: 2,
    });
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(outcome.stdout.as_bytes());
    let _ = out.flush();
    if let Some(msg) = outcome.stderr {
        eprintln!("unireg: {msg}");
    }
    ExitCode::from(outcome.code)
}
