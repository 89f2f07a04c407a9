//! Duality, local structure and saturation of a-valued lattices.
//!
//! Everything here works with the duality form of the ambient space: B for bilinear
//! spaces and the Hessian H for quadratic ones.

mod discriminant;
mod duality;
mod jordan;
mod saturation;

use thiserror::Error;

pub use discriminant::{
    discriminant_group, discriminant_module, discriminant_order, discriminant_primes, DiscriminantModule,
    PrimePart,
};
pub use duality::{bilinear_value_ideal, dual, is_a_valued, is_modular, value_ideal};
pub use jordan::{jordan_decomposition, jordan_gram, JordanBlock, JordanDecomposition};
pub use saturation::{is_saturated, max_scale_index, saturate, saturation_rescale};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatError {
    #[error(transparent)]
    Core(#[from] latmax_core::CoreError),
    #[error(transparent)]
    FiniteField(#[from] latmax_ffquadric::FfError),
    #[error("lattice is not a-valued for a = {0}")]
    NotAValued(String),
    #[error("lattice is not a-valued at p = {0}")]
    NotAValuedAt(u64),
    #[error("prime {0} exceeds 64 bits")]
    PrimeTooLarge(String),
    #[error("discriminant module is not elementary at p = {0}; saturate the lattice first")]
    Unsaturated(u64),
}

pub type Result<T> = std::result::Result<T, LatError>;
