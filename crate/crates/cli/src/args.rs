use std::path::PathBuf;

use chromest_core::exact::{DEFAULT_DC_CAP, DEFAULT_INTERP_CAP, DEFAULT_NBC_CAP};
use chromest_core::stats::{DEFAULT_TOLERANCE, DEFAULT_WINDOW_FRACTION};
use chromest_core::{OrderingKind, Variant};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "chromest", version, about = "Estimate chromatic polynomial coefficients by Monte Carlo sampling")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
    /// Estimate coefficients with one of the samplers.
    Estimate(EstimateArgs),
    /// Compute the exact chromatic polynomial.
    Exact(ExactArgs),
    /// Estimate, compute the exact polynomial and report the errors.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyName {
    Kite,
    Cycle,
    Path,
    Wheel,
    Complete,
    Star,
    Grid3d,
    Er,
}

/// Generator specification shared by every command.
#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    /// Graph family to generate instead of reading a file.
    #[arg(long, value_enum)]
    pub family: Option<FamilyName>,
    /// Vertex count (a wheel's count includes the hub).
    #[arg(long)]
    pub n: Option<usize>,
    /// Edge probability for `er`.
    #[arg(long)]
    pub p: Option<f64>,
    /// Side lengths for `grid3d`, e.g. `4,4,4`.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    pub dims: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Args)]
pub struct SourceArgs {
    /// Edge-list file, or DIMACS when the name ends in `.col`.
    #[arg(conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Seed for `--family er`.
    #[arg(long, default_value_t = 0)]
    pub graph_seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmArg {
    Bc,
    Ff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantArg {
    Plain,
    Improved,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Improved => Variant::Improved,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingArg {
    Peo,
    Input,
    Random,
}

impl From<OrderingArg> for OrderingKind {
    fn from(o: OrderingArg) -> OrderingKind {
        match o {
            OrderingArg::Peo => OrderingKind::Peo,
            OrderingArg::Input => OrderingKind::Input,
            OrderingArg::Random => OrderingKind::Random,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleArg {
    Dc,
    Interp,
    Nbc,
    Formula,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct CapArgs {
    /// Largest vertex count accepted by deletion-contraction.
    #[arg(long, default_value_t = DEFAULT_DC_CAP)]
    pub dc_cap: usize,
    /// Largest vertex count accepted by interpolation.
    #[arg(long, default_value_t = DEFAULT_INTERP_CAP)]
    pub interp_cap: usize,
    /// Largest vertex count accepted by broken-circuit enumeration.
    #[arg(long, default_value_t = DEFAULT_NBC_CAP)]
    pub nbc_cap: usize,
}

#[derive(Debug, Clone, Args)]
pub struct EstimatorArgs {
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Bc)]
    pub alg: AlgorithmArg,
    /// Broken-circuit sampler variant.
    #[arg(long, value_enum, default_value_t = VariantArg::Improved)]
    pub variant: VariantArg,
    /// Edge ordering for the broken-circuit sampler.
    #[arg(long, value_enum, default_value_t = OrderingArg::Peo)]
    pub ordering: OrderingArg,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Trailing fraction of the running-mean history used by the convergence check.
    #[arg(long, default_value_t = DEFAULT_WINDOW_FRACTION)]
    pub window: f64,
    /// Relative spread below which a coefficient counts as converged.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    pub tolerance: f64,
    /// Write the running means as CSV to this path.
    #[arg(long)]
    pub trace: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Seed for `--family er`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the edge list here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct EstimateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value_t = OracleArg::Dc)]
    pub oracle: OracleArg,
    /// Edge ordering for `--oracle nbc`.
    #[arg(long, value_enum, default_value_t = OrderingArg::Peo)]
    pub ordering: OrderingArg,
    /// Seed for `--ordering random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub estimator: EstimatorArgs,
    /// Exact reference; defaults to the closed form when the family has
    /// one and to deletion-contraction otherwise.
    #[arg(long, value_enum)]
    pub oracle: Option<OracleArg>,
    /// Points at which the relative evaluation error is reported.
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20,25,30")]
    pub x_grid: Vec<f64>,
    #[command(flatten)]
    pub caps: CapArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}
