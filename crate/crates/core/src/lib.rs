//! Exact rational arithmetic, integer normal forms and the space/lattice data model.

pub mod error;
pub mod lattice;
pub mod matrix;
pub mod normal_form;
pub mod primes;
pub mod rational;
pub mod space;

pub use error::{CoreError, Result};
pub use lattice::Lattice;
pub use matrix::{IntMatrix, RatMatrix};
pub use normal_form::{hnf, hnf_int, smith, smith_with_transforms, SmithForm};
pub use rational::{
    format_rational, int, ord_p, parse_rational, rat, rat_gcd, Ideal, Int, Rational,
};
pub use space::{FormKind, Space};

pub use num_bigint::BigInt;
pub use num_integer;
pub use num_rational;
pub use num_traits;
