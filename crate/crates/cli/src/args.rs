//! Command line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "kuga",
    version,
    about = "Certificates for compactifications of Kuga varieties"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized verifiers.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Numerical tolerance for floating point verifiers.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Kodaira dimension of X_g^n, or a table of them.
    Kodaira(KodairaArgs),
    /// Canonical-singularity certificate for (g, n).
    Certify(CertifyArgs),
    /// Minimal Reid-Tai ages over all boundary stabilizer profiles.
    Scan(ScanArgs),
    /// Build, check or refine lifted fans.
    #[command(subcommand)]
    Fan(FanCommand),
    /// Numerical checks of the automorphy factor.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Divisor classes, cusp form slopes and the minimal slope table.
    #[command(subcommand)]
    Slope(SlopeCommand),
}

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("mode").required(true).args(["g", "table"]))]
pub struct KodairaArgs {
    #[arg(long, requires = "n")]
    pub g: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Print the table for 1 <= g <= G_MAX, 1 <= n <= N_MAX.
    #[arg(long, num_args = 2, value_names = ["G_MAX", "N_MAX"], conflicts_with_all = ["g", "n"])]
    pub table: Option<Vec<usize>>,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub n: usize,
    /// Check windowed lifted fans instead of translation representatives.
    #[arg(long)]
    pub fan_window: Option<i64>,
    /// Boundary rank g'' to check fans for (repeatable).
    #[arg(long = "slice")]
    pub slices: Vec<usize>,
    #[arg(long, default_value_t = 12)]
    pub d_max: u64,
    /// Write the certificate JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long)]
    pub g: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 12)]
    pub d_max: u64,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FanCommand {
    /// Emit the lifted fan over a window.
    Build(FanBuildArgs),
    /// Run every fan condition on a fan file.
    Check(FanFileArgs),
    /// Refine a fan file to a smooth fan and re-check equidimensionality.
    Refine(FanFileArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct FanBuildArgs {
    #[arg(long)]
    pub gdd: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub window: i64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct FanFileArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub gdd: usize,
    /// Number of covectors; inferred from the ambient rank when omitted.
    #[arg(long)]
    pub n: Option<usize>,
    /// Base fan window; inferred from the rank one rays when omitted.
    #[arg(long)]
    pub window: Option<i64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyCommand {
    /// Cocycle identity on seeded random symplectic pairs.
    Cocycle(CocycleArgs),
    /// Eigenvalues of the automorphy factor at fixed points.
    FixedPoint(FixedPointArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct CocycleArgs {
    #[arg(long, default_value_t = 2)]
    pub g: usize,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct FixedPointArgs {
    #[arg(long, default_value_t = 1)]
    pub g: usize,
    /// Catalog entry: identity, minus-identity, order-3, order-4, order-6.
    #[arg(long)]
    pub element: Option<String>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SlopeCommand {
    /// Class of a named divisor and its slope.
    Class(SlopeClassArgs),
    /// Slope of a cusp form from its weight and Fourier support.
    Form(SlopeFormArgs),
    /// Minimal slope table for g = 1..6.
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
pub enum Which {
    #[value(name = "theta-null", alias = "ThetaNull")]
    ThetaNull,
    #[value(name = "n0prime", alias = "N0prime", alias = "N0Prime")]
    N0Prime,
}

#[derive(Debug, Args, Serialize)]
pub struct SlopeClassArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub which: Which,
    #[arg(long)]
    pub g: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct SlopeFormArgs {
    #[arg(long)]
    pub weight: u32,
    /// JSON file `{"g": N, "matrices": [...]}`.
    #[arg(long)]
    pub support: PathBuf,
}
