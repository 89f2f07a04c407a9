use latmax_core::num_traits::Zero;
use latmax_core::rational::inverse_mod;
use latmax_core::{BigInt, Ideal, Lattice, RatMatrix, Rational};
use latmax_ffquadric::{field, linalg};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::residual::{residual_quadric, ResidualQuadric};
use crate::Result;

impl ResidualQuadric {
    /// Integer coordinates of a lift v of the point with Q(v) ∈ a·p².
    ///
    /// With v₀ the naive lift, Q(v₀)/a = p·k, and h = H(v₀, e_j)/a a unit, the shear
    /// v = v₀ + p·t·e_j with t ≡ −k/h (mod p) kills the p-coefficient.
    pub fn lift(&self, x: &[u64]) -> Result<Vec<BigInt>> {
        self.check_point(x)?;
        let p = self.prime();
        let pb = BigInt::from(p);
        let mut v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
        let q0 = self.value(&v);
        debug_assert!((&q0 % &pb).is_zero());
        let k = self.reduce(&(&q0 / &pb));
        if k != 0 {
            let grad = self.gradient(x);
            let j = grad.iter().position(|&g| g != 0).expect("nonsingular");
            let hinv = inverse_mod(grad[j], p).expect("unit");
            let t = field::mul(field::neg(k, p), hinv, p);
            v[j] += &pb * BigInt::from(t);
        }
        debug_assert!((self.value(&v) % (&pb * &pb)).is_zero());
        Ok(v)
    }

    /// L′ = {x ∈ L : H(v, x) ∈ a·p} + ℤ·v/p for the lift v of the point.
    pub fn neighbor(&self, x: &[u64]) -> Result<Lattice> {
        let v = self.lift(x)?;
        let p = self.prime();
        let n = self.dim();
        let c = self.gradient(x);
        let j0 = c.iter().position(|&g| g != 0).expect("nonsingular");
        let inv = inverse_mod(c[j0], p).expect("unit");
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
        for i in 0..n {
            let mut r = vec![Rational::zero(); n];
            if i == j0 {
                r[i] = Rational::from_integer(BigInt::from(p));
            } else {
                r[i] = Rational::from_integer(BigInt::from(1));
                let f = field::mul(c[i], inv, p);
                r[j0] = -Rational::from_integer(BigInt::from(f));
            }
            rows.push(r);
        }
        let pr = Rational::from_integer(BigInt::from(p));
        rows.push(v.iter().map(|x| Rational::from_integer(x.clone()) / &pr).collect());
        let l = self.lattice();
        let ambient = RatMatrix::from_rows(&rows).mul(l.basis());
        Ok(Lattice::new(l.space().clone(), ambient)?)
    }

    /// A random point on the quadric, by intersecting random lines with it (odd p)
    /// or by drawing random vectors (p = 2).
    fn random_point(&self, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
        let p = self.prime();
        let n = self.dim();
        let draw = |rng: &mut ChaCha8Rng| -> Vec<u64> { (0..n).map(|_| rng.gen_range(0..p)).collect() };
        let x0 = draw(rng);
        if p == 2 {
            return self.is_on_quadric(&x0).then(|| linalg::normalize(&x0, p));
        }
        let m = draw(rng);
        // Q(x₀ + t·m) = A + B·t + C·t²
        let a0 = self.value_mod_p(&x0);
        let cc = self.value_mod_p(&m);
        let g = self.gradient(&x0);
        let b0 = m.iter().zip(&g).fold(0u64, |s, (&mi, &gi)| field::add(s, field::mul(mi, gi, p), p));
        let t = if cc == 0 {
            if b0 == 0 {
                return None;
            }
            field::mul(field::neg(a0, p), field::inv(b0, p)?, p)
        } else {
            let disc = field::sub(field::mul(b0, b0, p), field::mul(4 % p, field::mul(a0, cc, p), p), p);
            let r = field::sqrt(disc, p)?;
            let num = field::sub(r, b0, p);
            field::mul(num, field::inv(field::mul(2, cc, p), p)?, p)
        };
        let x: Vec<u64> = x0.iter().zip(&m).map(|(&a, &b)| field::add(a, field::mul(t, b, p), p)).collect();
        self.is_on_quadric(&x).then(|| linalg::normalize(&x, p))
    }
}

pub fn lift_nonsingular(l: &Lattice, p: u64, a: &Ideal, point: &[u64]) -> Result<Vec<Rational>> {
    let rq = residual_quadric(l, p, a)?;
    let v = rq.lift(point)?;
    let coords: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
    Ok(l.basis().left_mul_vec(&coords))
}

pub fn p_neighbor(l: &Lattice, p: u64, a: &Ideal, point: &[u64]) -> Result<Lattice> {
    residual_quadric(l, p, a)?.neighbor(point)
}

/// One neighbor per nonsingular point, sorted by canonical basis.
pub fn all_p_neighbors(l: &Lattice, p: u64, a: &Ideal, max_points: u64) -> Result<Vec<Lattice>> {
    let rq = residual_quadric(l, p, a)?;
    let mut out = rq
        .nonsingular_points(max_points)?
        .iter()
        .map(|pt| rq.neighbor(pt))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Neighbors from randomly drawn nonsingular points; never claims completeness.
#[derive(Clone, Debug)]
pub struct NeighborSample {
    pub neighbors: Vec<Lattice>,
    pub points: Vec<Vec<u64>>,
    pub attempts: usize,
}

/// Up to k neighbors at distinct random nonsingular points, deterministic in `seed`.
pub fn sample_p_neighbors(l: &Lattice, p: u64, a: &Ideal, k: usize, seed: u64) -> Result<NeighborSample> {
    let rq = residual_quadric(l, p, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Vec<u64>> = Vec::new();
    let budget = 64 * k.max(1) + 64;
    let mut attempts = 0;
    while points.len() < k && attempts < budget {
        attempts += 1;
        if let Some(x) = rq.random_point(&mut rng) {
            if rq.is_nonsingular(&x) && !points.contains(&x) {
                points.push(x);
            }
        }
    }
    points.sort();
    let mut pairs = points
        .into_iter()
        .map(|x| Ok((rq.neighbor(&x)?, x)))
        .collect::<Result<Vec<_>>>()?;
    pairs.sort();
    let (neighbors, points) = pairs.into_iter().unzip();
    Ok(NeighborSample { neighbors, points, attempts })
}
