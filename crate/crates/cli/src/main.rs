//! `pgcone`: construct cones in PG(n,q), measure their spectra, recognize
//! cones and check characterization instances.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid input.

mod commands;
mod pointfile;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] pgcone::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Field order given as `q` or `p^h`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Order {
    pub p: u64,
    pub h: u32,
}

impl Order {
    pub fn q(self) -> u64 {
        self.p.pow(self.h)
    }
}

fn parse_order(s: &str) -> Result<Order, String> {
    let q = match s.split_once('^') {
        Some((p, h)) => {
            let p: u64 = p.trim().parse().map_err(|e| format!("bad prime '{p}': {e}"))?;
            let h: u32 = h.trim().parse().map_err(|e| format!("bad exponent '{h}': {e}"))?;
            p.checked_pow(h).ok_or_else(|| format!("{s} overflows"))?
        }
        None => s.trim().parse().map_err(|e| format!("bad order '{s}': {e}"))?,
    };
    let (p, h) = pgcone::gf::prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?;
    Ok(Order { p, h })
}

#[derive(Debug, Parser)]
#[command(name = "pgcone", version, about = "Cones, spectra and counting checks in PG(n,q)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a canonical point set and write it as JSON.
    Construct(ConstructArgs),
    /// Intersection numbers of a point set with all d-subspaces.
    Spectrum(SpectrumArgs),
    /// Build the canonical cone of a characterization and check every prediction.
    Verify(VerifyArgs),
    /// Screen candidate sizes k for a three-valued hyperplane type.
    FeasibleK(FeasibleArgs),
    /// Detect vertex and base of a point set read from file.
    Recognize(RecognizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Object {
    BaerCone,
    UnitalCone,
    HyperovalCone,
    MaxarcCone,
    BaerSubgeometry,
    Unital,
    Hyperoval,
    Maxarc,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub object: Object,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_parser = parse_order)]
    pub q: Order,
    /// Vertex dimension of a Baer cone.
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    /// Dimension of the Baer subgeometry.
    #[arg(long, allow_negative_numbers = true)]
    pub s: Option<i64>,
    /// Degree of the maximal arc.
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Subspace dimension, default n-1.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    /// baer | unital | hyperoval3 | hyperovalN | maxarc
    #[arg(long)]
    pub theorem: String,
    /// Ambient dimension; defaults to 3 for hyperoval3.
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_parser = parse_order)]
    pub q: Order,
    /// Half-codimension parameter for baer.
    #[arg(long)]
    pub t: Option<u64>,
    /// Arc degree for maxarc.
    #[arg(long)]
    pub d: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub theorem: TheoremArgs,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Machine-readable report instead of text.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct FeasibleArgs {
    /// Derive a, b, c, range and conditions from a theorem.
    #[arg(long)]
    pub theorem: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long, value_parser = parse_order)]
    pub q: Order,
    #[arg(long)]
    pub t: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Explicit intersection sizes, used without --theorem.
    #[arg(long, requires_all = ["b", "c"], conflicts_with = "theorem")]
    pub a: Option<u64>,
    #[arg(long)]
    pub b: Option<u64>,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long)]
    pub lo: Option<u64>,
    #[arg(long)]
    pub hi: Option<u64>,
    /// Keep sizes where some t is zero.
    #[arg(long)]
    pub allow_zero: bool,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct RecognizeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => commands::construct(&args),
        Command::Spectrum(args) => commands::spectrum(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::FeasibleK(args) => commands::feasible_k(&args),
        Command::Recognize(args) => commands::recognize(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
