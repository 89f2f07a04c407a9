//! Automorphism orders, isometry testing, Siegel masses and mass-terminated genus
//! enumeration for positive definite lattices.

mod enumerate;
mod iso;
mod mass;
mod reduce;

use latmax_core::CoreError;
use latmax_latticealg::LatError;
use latmax_neighbor::NeighborError;
use thiserror::Error;

pub use enumerate::{enumerate_genus, GenusClass, GenusOptions, GenusRun, MassSource};
pub use iso::{aut_order, is_isometric, short_vectors, Isometry};
pub use mass::siegel_mass;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Lattice(#[from] LatError),
    #[error(transparent)]
    Neighbor(#[from] NeighborError),
    #[error("form is not positive definite; indefinite genera have no mass-based stopping rule")]
    NotPositiveDefinite,
    #[error("rank ≥ 3 required, got rank {0}")]
    RankTooSmall(usize),
    #[error("genus enumeration needs a quadratic lattice")]
    NotQuadratic,
    #[error("reduced Gram entry does not fit in 64 bits")]
    EntryTooLarge,
    #[error("mass formula does not cover the local structure at p = {0}; supply the mass instead")]
    UnsupportedAt(u64),
    #[error("supplied mass {0} is not positive")]
    BadMass(String),
    #[error("partial mass {partial} exceeds target mass {target}; the target mass is wrong")]
    MassExceeded { partial: String, target: String },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

pub type Result<T> = std::result::Result<T, GenusError>;
