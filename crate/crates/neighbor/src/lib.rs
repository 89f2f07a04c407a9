//! Kneser p-neighbors of a-valued quadratic lattices.
//!
//! Points of the residual quadric are taken in coordinates relative to the canonical
//! basis of the lattice, so the point order (and hence the neighbor order) is fixed by
//! the lattice alone.

mod construct;
mod residual;

use latmax_core::{CoreError, Ideal, Lattice};
use latmax_ffquadric::FfError;
use thiserror::Error;

pub use construct::{all_p_neighbors, lift_nonsingular, p_neighbor, sample_p_neighbors, NeighborSample};
pub use residual::{residual_quadric, ResidualPoint, ResidualQuadric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NeighborError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    FiniteField(#[from] FfError),
    #[error("p-neighbors are defined for quadratic lattices only")]
    NotQuadratic,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("Q(L) is not contained in a = {0}")]
    NotAValued(String),
    #[error("point has the wrong length or is not on the residual quadric")]
    NotOnQuadric,
    #[error("point is singular on the residual quadric")]
    Singular,
}

pub type Result<T> = std::result::Result<T, NeighborError>;

/// Every neighbor of L at p together with the point it came from, in point order.
pub fn neighbors_with_points(l: &Lattice, p: u64, a: &Ideal, max_points: u64) -> Result<Vec<(Vec<u64>, Lattice)>> {
    let rq = residual_quadric(l, p, a)?;
    rq.nonsingular_points(max_points)?
        .into_iter()
        .map(|pt| Ok((pt.clone(), rq.neighbor(&pt)?)))
        .collect()
}
