use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::run::Method;
use crate::table::TableKind;

#[derive(Debug, Parser)]
#[command(name = "lcpkit", version, about = "Projected splitting iterations for linear complementarity problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and report IT, residual, time and convergence.
    Solve(SolveArgs),
    /// Print the convergence certificate of a splitting.
    Check(CheckArgs),
    /// Reproduce the four-method benchmark tables.
    Table(TableArgs),
    /// Write a generated instance to MatrixMarket and vector files.
    Gen(GenArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Example1,
    Example2,
    /// Random strictly diagonally dominant Z-matrix (needs --n).
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct GeneratorArgs {
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Block order; the instance has n = m^2 unknowns.
    #[arg(long)]
    pub m: Option<usize>,
    /// Diagonal shift delta1.
    #[arg(long, default_value_t = 4.0)]
    pub delta: f64,
    /// Dimension of a random instance.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// MatrixMarket file holding A.
    #[arg(long, requires = "sigma", conflicts_with = "family")]
    pub matrix: Option<PathBuf>,
    /// Vector file holding sigma, one value per line.
    #[arg(long, requires = "matrix")]
    pub sigma: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    #[arg(long, value_enum, default_value_t = Method::Npgs)]
    pub method: Method,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    /// Modulus scaling gamma (mgs/msor).
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    /// Omega = scale * D for mgs/msor; defaults to 1 / (2 alpha).
    #[arg(long)]
    pub omega_scale: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    /// Starting vector: "alt" (1,0,1,0,...), "zero", or a vector file.
    #[arg(long, default_value = "alt")]
    pub init: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Largest n for which the P-matrix property is enumerated.
    #[arg(long, default_value_t = 12)]
    pub p_limit: usize,
    #[arg(long, value_enum, default_value_t = CheckFormat::Text)]
    pub format: CheckFormat,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub which: TableKind,
    /// Comma-separated problem sizes, each a perfect square.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// MSOR relaxation parameter.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// NPSOR relaxation parameter.
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 4.0)]
    pub delta: f64,
    #[arg(long, default_value_t = 1e-5)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, value_enum, default_value_t = Format::Md)]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Destination MatrixMarket file.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Destination vector file.
    #[arg(long)]
    pub sigma: PathBuf,
}
