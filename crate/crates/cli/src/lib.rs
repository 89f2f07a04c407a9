//! Command-line front end. Every subcommand reads lattice files in the JSON format of
//! [`doc`] and produces one deterministic JSON document.
//!
//! Exit codes: 0 success, 2 malformed input or arguments, 3 violated precondition,
//! 4 resource bound exceeded.

pub mod commands;
pub mod doc;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use latmax_core::CoreError;
use latmax_ffquadric::FfError;
use latmax_genus::GenusError;
use latmax_latticealg::LatError;
use latmax_maximal::MaximalError;
use latmax_neighbor::NeighborError;
use thiserror::Error;

pub use commands::{run, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource bound exceeded: {0}")]
    Resource(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Resource(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Precondition(e.to_string())
    }
}

impl From<FfError> for CliError {
    fn from(e: FfError) -> Self {
        match e {
            FfError::BoundExceeded { .. } => CliError::Resource(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<LatError> for CliError {
    fn from(e: LatError) -> Self {
        match e {
            LatError::FiniteField(f) => f.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<MaximalError> for CliError {
    fn from(e: MaximalError) -> Self {
        match e {
            MaximalError::FiniteField(f) => f.into(),
            MaximalError::Lattice(l) => l.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<NeighborError> for CliError {
    fn from(e: NeighborError) -> Self {
        match e {
            NeighborError::FiniteField(f) => f.into(),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<GenusError> for CliError {
    fn from(e: GenusError) -> Self {
        match e {
            GenusError::Lattice(l) => l.into(),
            GenusError::Neighbor(n) => n.into(),
            GenusError::EntryTooLarge | GenusError::ThreadPool(_) => CliError::Resource(e.to_string()),
            e => CliError::Precondition(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "latmax", version, about = "Maximal lattices, Kneser neighbors and genus enumeration over ℚ")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Ideal a as a positive rational; overrides the "a" field of the input.
    #[arg(long = "a", global = true, value_name = "RATIONAL")]
    pub a: Option<String>,
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Bound on enumerated projective points (default: $LATMAX_MAX_POINTS or 10^7).
    #[arg(long, global = true)]
    pub max_points: Option<u64>,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The a-dual lattice.
    Dual { input: PathBuf },
    /// Jordan decomposition at a prime.
    Jordan {
        input: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Saturated a-valued lattice containing the input.
    Saturate { input: PathBuf },
    /// Discriminant group and its prime parts.
    Disc { input: PathBuf },
    /// Maximal a-valued lattice containing (a rescaling of) the input.
    Maximal {
        input: PathBuf,
        /// Form to maximize for; defaults to the kind of the input.
        #[arg(long)]
        kind: Option<String>,
    },
    /// p-neighbors, all of them or a seeded random sample.
    Neighbors {
        input: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long, conflicts_with = "sample")]
        all: bool,
        #[arg(long, value_name = "K")]
        sample: Option<usize>,
    },
    /// All classes in the genus of a positive definite quadratic lattice.
    Genus {
        input: PathBuf,
        /// Known mass of the genus, replacing the mass formula.
        #[arg(long, value_name = "P/Q")]
        mass: Option<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Give up after this many neighbor primes.
        #[arg(long, default_value_t = 6)]
        max_primes: usize,
    },
    /// Order of the automorphism group.
    Auto { input: PathBuf },
    /// Isometry test with a witness.
    Isometric { first: PathBuf, second: PathBuf },
    /// Mass of the genus from local densities.
    Mass { input: PathBuf },
}
