//! Maximal a-valued lattices in bilinear and quadratic spaces.

mod bilinear;
mod even;
mod quadratic;

use latmax_core::CoreError;
use latmax_ffquadric::FfError;
use latmax_latticealg::LatError;
use thiserror::Error;

pub use bilinear::{certify_maximal, maximal_bilinear};
pub use even::{even_sublattice_at_p, is_a_even_at_p, EvenSublatticeResult};
pub use quadratic::{is_quadratic_a_valued, maximal_quadratic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaximalError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    FiniteField(#[from] FfError),
    #[error(transparent)]
    Lattice(#[from] LatError),
    #[error("maximal_quadratic needs a quadratic space")]
    NotQuadratic,
    #[error("start lattice lives in a different space")]
    ForeignStart,
    #[error("certification failed: discriminant part at p = {0} is isotropic")]
    NotCertified(u64),
}

pub type Result<T> = std::result::Result<T, MaximalError>;
