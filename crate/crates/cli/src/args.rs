use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fockmult_core::{Check, DEFAULT_CAPACITY, DEFAULT_NORM_SEED};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(
    name = "fockmult",
    version,
    about = "Multiplier norms and identities on truncated Fock spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norm of the multiplier pair of a symbol at one level.
    Norm(Common),
    /// Pair norms over increasing levels.
    Sweep(Common),
    /// Sampled verification of an algebraic identity.
    Verify {
        check: Check,
        #[command(flatten)]
        common: Common,
    },
    /// Compare truncated norms against a closed-form model.
    Identify {
        target: Target,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Circulant,
    Hardy,
    Popescu,
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Monoid as JSON, e.g. '{"kind":"free","rank":2}'.
    #[arg(long)]
    pub spec: String,
    /// Symbol as JSON, or @path to read it from a file. Either a list of
    /// {"elem","re","im"} terms or a dense list of coefficients in window order.
    #[arg(long)]
    pub symbol: Option<String>,
    #[arg(long)]
    pub level: Option<usize>,
    /// Comma-separated, strictly increasing.
    #[arg(long, value_delimiter = ',')]
    pub levels: Option<Vec<usize>>,
    /// Pass threshold; the default depends on the command.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Stopping tolerance of the power iteration.
    #[arg(long, default_value_t = 1e-12)]
    pub kernel_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    /// Seed of the power iteration start vector.
    #[arg(long, default_value_t = DEFAULT_NORM_SEED)]
    pub kernel_seed: u64,
    /// Points per torus axis for the Hardy comparison.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Block size for the operator-space check.
    #[arg(long, default_value_t = 2)]
    pub block_size: usize,
    /// Largest window the run may build.
    #[arg(long, default_value_t = DEFAULT_CAPACITY)]
    pub capacity: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}
