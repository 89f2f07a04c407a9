use num_traits::Zero;

use crate::error::{CoreError, Result};
use crate::matrix::RatMatrix;
use crate::rational::{int, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormKind {
    Bilinear,
    Quadratic,
}

impl FormKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FormKind::Bilinear => "bilinear",
            FormKind::Quadratic => "quadratic",
        }
    }
}

/// A non-degenerate rational space: either (V, B) with B(x,y) = xᵀ·gram·y, or (V, Q)
/// with Q(x) = xᵀ·gram·x and Hessian H(x,y) = 2·xᵀ·gram·y.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Space {
    kind: FormKind,
    gram: RatMatrix,
}

impl Space {
    pub fn new(kind: FormKind, gram: RatMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(CoreError::DimensionMismatch { expected: gram.rows(), got: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(CoreError::NotSymmetric);
        }
        if gram.det().is_zero() {
            return Err(CoreError::DegenerateSpace);
        }
        Ok(Space { kind, gram })
    }

    pub fn bilinear(gram: RatMatrix) -> Result<Self> {
        Space::new(FormKind::Bilinear, gram)
    }

    pub fn quadratic(gram: RatMatrix) -> Result<Self> {
        Space::new(FormKind::Quadratic, gram)
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Matrix of the bilinear form used for duality: B itself, or the Hessian 2·gram.
    pub fn bilinear_gram(&self) -> RatMatrix {
        match self.kind {
            FormKind::Bilinear => self.gram.clone(),
            FormKind::Quadratic => self.gram.scale(&int(2)),
        }
    }

    fn check(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(CoreError::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    /// B(x, y) for bilinear spaces, H(x, y) for quadratic ones.
    pub fn eval_b(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        let v = self.gram.bilinear(x, y);
        Ok(match self.kind {
            FormKind::Bilinear => v,
            FormKind::Quadratic => v * int(2),
        })
    }

    /// Q(x) = xᵀ·gram·x; for a bilinear space this is Q_B(x) = B(x, x).
    pub fn eval_q(&self, x: &[Rational]) -> Result<Rational> {
        self.check(x)?;
        Ok(self.gram.bilinear(x, x))
    }

    pub fn eval_h(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.gram.bilinear(x, y) * int(2))
    }

    pub fn hessian_space(&self) -> Space {
        Space { kind: FormKind::Bilinear, gram: self.gram.scale(&int(2)) }
    }

    pub fn assoc_quadratic(&self) -> Space {
        Space { kind: FormKind::Quadratic, gram: self.gram.clone() }
    }
}
