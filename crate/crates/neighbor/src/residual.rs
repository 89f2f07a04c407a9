use latmax_core::num_integer::Integer;
use latmax_core::num_traits::{ToPrimitive, Zero};
use latmax_core::{BigInt, FormKind, Ideal, Lattice, Rational};
use latmax_ffquadric::{field, projective_points};

use crate::{NeighborError, Result};

/// One point of P(L/pL) on the residual quadric, with its singularity flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualPoint {
    pub coords: Vec<u64>,
    pub nonsingular: bool,
}

/// Q/a and H/a on the basis of L, as exact integers and reduced mod p.
#[derive(Clone, Debug)]
pub struct ResidualQuadric {
    lattice: Lattice,
    p: u64,
    a: Ideal,
    q: Vec<BigInt>,
    h: Vec<Vec<BigInt>>,
    q_mod: Vec<u64>,
    h_mod: Vec<Vec<u64>>,
}

pub fn residual_quadric(l: &Lattice, p: u64, a: &Ideal) -> Result<ResidualQuadric> {
    if l.kind() != FormKind::Quadratic {
        return Err(NeighborError::NotQuadratic);
    }
    if !field::is_prime(p) {
        return Err(NeighborError::NotPrime(p));
    }
    let g = l.form_gram();
    let n = l.dim();
    let not_valued = || NeighborError::NotAValued(a.to_string());
    let to_int = |x: Rational| -> Result<BigInt> {
        let y = x / a.generator();
        if y.is_integer() {
            Ok(y.to_integer())
        } else {
            Err(not_valued())
        }
    };
    let mut q = Vec::with_capacity(n);
    let mut h = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        q.push(to_int(g.get(i, i).clone())?);
        for j in 0..n {
            h[i][j] = to_int(g.get(i, j) * BigInt::from(2))?;
        }
    }
    let pm = BigInt::from(p);
    let red = |x: &BigInt| x.mod_floor(&pm).to_u64().expect("residue fits");
    let q_mod = q.iter().map(red).collect();
    let h_mod = h.iter().map(|r| r.iter().map(red).collect()).collect();
    Ok(ResidualQuadric { lattice: l.clone(), p, a: a.clone(), q, h, q_mod, h_mod })
}

impl ResidualQuadric {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ideal(&self) -> &Ideal {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.q.len()
    }

    /// Q(x)/a mod p.
    pub fn value_mod_p(&self, x: &[u64]) -> u64 {
        let p = self.p as u128;
        let n = self.dim();
        let mut s: u128 = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let xi = x[i] as u128;
            s = (s + self.q_mod[i] as u128 * (xi * xi % p)) % p;
            for j in i + 1..n {
                s = (s + self.h_mod[i][j] as u128 * (xi * x[j] as u128 % p)) % p;
            }
        }
        s as u64
    }

    /// H(x, e_j)/a mod p for every basis vector e_j.
    pub fn gradient(&self, x: &[u64]) -> Vec<u64> {
        let p = self.p as u128;
        let n = self.dim();
        (0..n)
            .map(|j| {
                let s = (0..n).fold(0u128, |acc, i| (acc + x[i] as u128 * self.h_mod[i][j] as u128) % p);
                s as u64
            })
            .collect()
    }

    pub fn is_on_quadric(&self, x: &[u64]) -> bool {
        x.len() == self.dim() && x.iter().any(|&c| c % self.p != 0) && self.value_mod_p(x) == 0
    }

    pub fn is_nonsingular(&self, x: &[u64]) -> bool {
        self.gradient(x).iter().any(|&g| g != 0)
    }

    /// Points of the quadric in the lexicographic order of P^{n-1}(F_p).
    pub fn points(&self, max_points: u64) -> Result<impl Iterator<Item = ResidualPoint> + '_> {
        let it = projective_points(self.p, self.dim(), max_points)?;
        Ok(it.filter(|x| self.value_mod_p(x) == 0).map(|x| {
            let nonsingular = self.is_nonsingular(&x);
            ResidualPoint { coords: x, nonsingular }
        }))
    }

    pub fn nonsingular_points(&self, max_points: u64) -> Result<Vec<Vec<u64>>> {
        Ok(self.points(max_points)?.filter(|pt| pt.nonsingular).map(|pt| pt.coords).collect())
    }

    /// Exact Q(v)/a for integer coordinates v.
    pub(crate) fn value(&self, v: &[BigInt]) -> BigInt {
        let n = self.dim();
        let mut s = BigInt::zero();
        for i in 0..n {
            s += &self.q[i] * &v[i] * &v[i];
            for j in i + 1..n {
                s += &self.h[i][j] * &v[i] * &v[j];
            }
        }
        s
    }

    /// Reduction of an exact residue class representative, used by the lift.
    pub(crate) fn reduce(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.p)).to_u64().expect("residue fits")
    }

    pub(crate) fn check_point(&self, x: &[u64]) -> Result<()> {
        if !self.is_on_quadric(x) {
            return Err(NeighborError::NotOnQuadric);
        }
        if !self.is_nonsingular(x) {
            return Err(NeighborError::Singular);
        }
        Ok(())
    }
}
