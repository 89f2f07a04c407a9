use crate::field::{self, add, mul};
use crate::linalg;
use crate::{FfError, Result};

/// Symmetric bilinear form over F_p, with Q_B(x) = B(x, x).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpForm {
    p: u64,
    gram: Vec<Vec<u64>>,
}

impl FpForm {
    pub fn new(p: u64, gram: Vec<Vec<i64>>) -> Result<Self> {
        let g = gram
            .into_iter()
            .map(|r| r.into_iter().map(|x| field::reduce(x, p)).collect())
            .collect();
        FpForm::from_residues(p, g)
    }

    pub fn from_residues(p: u64, gram: Vec<Vec<u64>>) -> Result<Self> {
        if !field::is_prime(p) {
            return Err(FfError::NotPrime(p));
        }
        let n = gram.len();
        if gram.iter().any(|r| r.len() != n) {
            return Err(FfError::NotSquare);
        }
        let gram: Vec<Vec<u64>> =
            gram.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(FfError::NotSymmetric);
                }
            }
        }
        Ok(FpForm { p, gram })
    }

    pub fn diagonal(p: u64, d: &[i64]) -> Result<Self> {
        let n = d.len();
        let g = (0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i] } else { 0 }).collect())
            .collect();
        FpForm::new(p, g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<u64>] {
        &self.gram
    }

    pub fn b(&self, x: &[u64], y: &[u64]) -> u64 {
        let p = self.p;
        let mut s = 0;
        for i in 0..self.dim() {
            if x[i] == 0 {
                continue;
            }
            let mut t = 0;
            for j in 0..self.dim() {
                t = add(t, mul(self.gram[i][j], y[j], p), p);
            }
            s = add(s, mul(x[i], t, p), p);
        }
        s
    }

    pub fn q(&self, x: &[u64]) -> u64 {
        self.b(x, x)
    }

    /// Gram matrix of the form restricted to span(basis), in those coordinates.
    pub fn restrict(&self, basis: &[Vec<u64>]) -> FpForm {
        let g = basis.iter().map(|x| basis.iter().map(|y| self.b(x, y)).collect()).collect();
        FpForm { p: self.p, gram: g }
    }

    pub fn det(&self) -> u64 {
        let p = self.p;
        let n = self.dim();
        let mut a = self.gram.clone();
        let mut d = 1u64;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&i| a[i][c] != 0) else { return 0 };
            if piv != c {
                a.swap(piv, c);
                d = field::neg(d, p);
            }
            d = mul(d, a[c][c], p);
            let s = field::inv(a[c][c], p).expect("nonzero");
            for i in c + 1..n {
                let f = mul(a[i][c], s, p);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[i][j] = field::sub(a[i][j], mul(f, a[c][j], p), p);
                }
            }
        }
        d
    }

    pub fn is_degenerate(&self) -> bool {
        self.det() == 0
    }

    pub fn radical(&self) -> Radical {
        let basis = linalg::kernel(&self.gram, self.dim(), self.p);
        let complement = linalg::complement(&basis, self.dim(), self.p);
        Radical { basis, complement }
    }
}

/// Radical of a form together with a complementary subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radical {
    pub basis: Vec<Vec<u64>>,
    pub complement: Vec<Vec<u64>>,
}

pub fn radical(f: &FpForm) -> Radical {
    f.radical()
}
