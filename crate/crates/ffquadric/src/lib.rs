//! Geometry of symmetric bilinear forms over prime fields F_p.

pub mod field;
pub mod form;
pub mod isotropy;
pub mod linalg;
pub mod points;
pub mod witt;

use thiserror::Error;

pub use form::{radical, FpForm, Radical};
pub use isotropy::{find_isotropic_vector, hyperbolic_complement, is_isotropic, is_isotropic_exhaustive};
pub use points::{default_max_points, point_count, projective_points, ProjectivePoints, DEFAULT_MAX_POINTS};
pub use witt::{witt_split, witt_split_seeded, WittSplit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate; split off the radical first")]
    Degenerate,
    #[error("form is anisotropic")]
    Anisotropic,
    #[error("vector is zero or not isotropic")]
    NotIsotropic,
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("enumeration needs {needed} points, bound is {bound}; use random sampling instead")]
    BoundExceeded { needed: u128, bound: u64 },
}

pub type Result<T> = std::result::Result<T, FfError>;
