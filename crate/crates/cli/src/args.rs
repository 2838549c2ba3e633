use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ces", version, about = "Completely entangled subspaces and unextendible product bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Level counts a_n and the dimensions derived from them.
    Dims {
        #[arg(long)]
        dims: String,
        #[arg(long, value_enum, default_value_t = DimsFormat::Table)]
        format: DimsFormat,
    },
    /// Write a basis of one of the built-in spaces.
    Construct {
        #[arg(long)]
        dims: Option<String>,
        /// S, Sperp, level:n, example1, example2-M, example2-Mperp, example2-R
        #[arg(long)]
        space: String,
        /// rational, gaussian or fp:p
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and verify an unextendible product basis.
    Upb {
        #[arg(long)]
        dims: String,
        #[arg(long, conflicts_with = "min", required_unless_present = "min")]
        size: Option<usize>,
        #[arg(long)]
        min: bool,
        /// Comma-separated Vandermonde points: integers, p/q, or inf.
        #[arg(long)]
        lambdas: Option<String>,
        #[command(flatten)]
        verify: VerifyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a built-in space for product vectors.
    Verify {
        #[arg(long)]
        dims: Option<String>,
        #[arg(long)]
        space: String,
        #[command(flatten)]
        verify: VerifyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the product vectors of S⊥ over F_p with the Vandermonde family.
    Classify {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        prime: u64,
    },
    /// Character orthonormal basis of one level.
    Onb {
        #[arg(long)]
        dims: String,
        #[arg(long)]
        level: i64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = MethodArg::Ff)]
    pub method: MethodArg,
    /// Comma-separated primes for the finite-field oracle; each must exceed N.
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 500)]
    pub max_sweeps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Ff,
    Als,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DimsFormat {
    Table,
    Json,
}
