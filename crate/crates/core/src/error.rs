use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("degenerate basis")]
    DegenerateBasis,
    #[error("singular matrix")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("degenerate ambient space (det = 0)")]
    DegenerateSpace,
    #[error("ideal generator must be a positive rational, got {0}")]
    BadIdeal(String),
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
