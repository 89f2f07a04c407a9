use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::matrix::RatMatrix;
use crate::normal_form::hnf;
use crate::rational::Rational;
use crate::space::{FormKind, Space};

/// A full-rank ℤ-lattice in a rational space. The stored basis is always the canonical
/// HNF basis, so structural equality is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    space: Arc<Space>,
    basis: RatMatrix,
}

impl Lattice {
    /// Lattice spanned by the rows of `gens` (any number of rows, full rank required).
    pub fn new(space: Arc<Space>, gens: RatMatrix) -> Result<Self> {
        if gens.cols() != space.dim() {
            return Err(CoreError::DimensionMismatch { expected: space.dim(), got: gens.cols() });
        }
        if gens.rows() < space.dim() {
            return Err(CoreError::DegenerateBasis);
        }
        let basis = hnf(&gens)?;
        if basis.rows() != space.dim() {
            return Err(CoreError::DegenerateBasis);
        }
        Ok(Lattice { space, basis })
    }

    pub fn standard(space: Arc<Space>) -> Self {
        let n = space.dim();
        Lattice { space, basis: RatMatrix::identity(n) }
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn kind(&self) -> FormKind {
        self.space.kind()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    /// Gram matrix of the duality form (B, or the Hessian H for quadratic spaces).
    pub fn gram(&self) -> RatMatrix {
        self.basis.mul(&self.space.bilinear_gram()).mul(&self.basis.transpose())
    }

    /// M·gram·Mᵀ with the ambient gram as given: the Q-matrix for quadratic spaces.
    pub fn form_gram(&self) -> RatMatrix {
        self.basis.mul(self.space.gram()).mul(&self.basis.transpose())
    }

    pub fn with_space(&self, space: Arc<Space>) -> Result<Lattice> {
        Lattice::new(space, self.basis.clone())
    }

    pub fn scale(&self, c: &Rational) -> Result<Lattice> {
        if c.is_zero() {
            return Err(CoreError::DegenerateBasis);
        }
        Lattice::new(self.space.clone(), self.basis.scale(&c.abs()))
    }

    pub fn sum(&self, other: &Lattice) -> Lattice {
        Lattice::new(self.space.clone(), self.basis.stack(&other.basis))
            .expect("sum of full-rank lattices has full rank")
    }

    /// Lattice generated by `self` and the extra vectors (ambient coordinates).
    pub fn adjoin(&self, vectors: &[Vec<Rational>]) -> Lattice {
        if vectors.is_empty() {
            return self.clone();
        }
        let extra = RatMatrix::from_rows(vectors);
        Lattice::new(self.space.clone(), self.basis.stack(&extra)).expect("full rank")
    }

    /// Coordinates of an ambient vector with respect to the basis.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        let inv = self.basis.inverse().expect("basis is invertible");
        inv.left_mul_vec(v)
    }

    /// Basis rows of `other` expressed in this basis.
    pub fn coordinate_matrix(&self, other: &Lattice) -> RatMatrix {
        other.basis.mul(&self.basis.inverse().expect("basis is invertible"))
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        self.coordinates(v).iter().all(|x| x.denom() == &BigInt::from(1))
    }

    pub fn contains(&self, other: &Lattice) -> bool {
        self.coordinate_matrix(other).is_integral()
    }

    /// [self : other] when other ⊆ self.
    pub fn index_of(&self, other: &Lattice) -> Option<BigInt> {
        let c = self.coordinate_matrix(other);
        if !c.is_integral() {
            return None;
        }
        Some(c.to_integer().abs_det())
    }

    /// Dual with respect to the standard dot product; independent of the ambient form.
    fn dot_dual(&self) -> Lattice {
        let d = self.basis.inverse().expect("basis is invertible").transpose();
        Lattice::new(self.space.clone(), d).expect("full rank")
    }

    pub fn intersection(&self, other: &Lattice) -> Lattice {
        self.dot_dual().sum(&other.dot_dual()).dot_dual()
    }

    /// |det| of the Gram matrix of the duality form.
    pub fn discriminant(&self) -> Rational {
        self.gram().det().abs()
    }
}

impl PartialOrd for Lattice {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Lattice {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis
            .cmp(&other.basis)
            .then_with(|| self.space.gram().cmp(other.space.gram()))
            .then_with(|| self.space.kind().cmp(&other.space.kind()))
    }
}
