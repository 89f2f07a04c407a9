//! Exact Minkowski–Siegel masses of positive definite lattices.
//!
//! The mass is the standard mass (a product of Gamma values, even zeta values and, in
//! even rank, a Dirichlet L-value) corrected by local factors at the primes dividing
//! 2·det. Each local factor is built from the Jordan constituents: a species is
//! attached to every constituent, and the factor is a product of the species masses,
//! a cross term p^{Σ (j−i)·nᵢ·nⱼ / 2}, and at p = 2 a type correction. Every factor is
//! exact; the transcendental parts are tracked as powers of π and a square root and
//! must cancel.

use std::collections::BTreeMap;

use latmax_core::num_integer::Integer;
use latmax_core::num_traits::{One, Signed, ToPrimitive, Zero};
use latmax_core::primes::{factor, prime_divisors};
use latmax_core::rational::{pow_rat, residue};
use latmax_core::{rat_gcd, BigInt, Lattice, RatMatrix, Rational};
use latmax_latticealg::jordan_gram;

use crate::reduce::is_positive_definite;
use crate::{GenusError, Result};

/// r · π^e · √m with m squarefree.
#[derive(Clone, Debug, PartialEq)]
struct Num {
    r: Rational,
    e: Rational,
    m: BigInt,
}

impl Num {
    fn rat(r: Rational) -> Num {
        Num { r, e: Rational::zero(), m: BigInt::one() }
    }

    fn pi_pow(r: Rational, e: Rational) -> Num {
        Num { r, e, m: BigInt::one() }
    }

    /// √k for a positive integer k.
    fn sqrt(k: &BigInt) -> Num {
        let mut r = BigInt::one();
        let mut m = BigInt::one();
        for (p, e) in factor(k) {
            let p = BigInt::from(p);
            r *= p.pow(e / 2);
            if e % 2 == 1 {
                m *= p;
            }
        }
        Num { r: Rational::from_integer(r), e: Rational::zero(), m }
    }

    fn mul(&self, o: &Num) -> Num {
        let g = self.m.gcd(&o.m);
        let m = (&self.m / &g) * (&o.m / &g);
        Num { r: &self.r * &o.r * Rational::from_integer(g), e: &self.e + &o.e, m }
    }

    fn mul_rat(&self, x: &Rational) -> Num {
        Num { r: &self.r * x, e: self.e.clone(), m: self.m.clone() }
    }
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial(n: u64, k: u64) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// B_0..B_k with B_1 = −1/2.
fn bernoulli_numbers(k: usize) -> Vec<Rational> {
    let mut b = vec![Rational::one()];
    for m in 1..=k {
        let s: Rational = (0..m)
            .map(|j| Rational::from_integer(binomial(m as u64 + 1, j as u64)) * &b[j])
            .sum();
        b.push(-s / Rational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn bernoulli_poly(k: usize, x: &Rational, b: &[Rational]) -> Rational {
    (0..=k)
        .map(|j| {
            Rational::from_integer(binomial(k as u64, j as u64)) * &b[j] * num_pow(x, (k - j) as u32)
        })
        .sum()
}

fn num_pow(x: &Rational, e: u32) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

/// Jacobi symbol (a/n) for odd n > 0.
fn jacobi(a: &BigInt, n: u64) -> i32 {
    let nb = BigInt::from(n);
    let mut a = a.mod_floor(&nb).to_u64().expect("reduced");
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// Kronecker symbol (D/a) for a discriminant D and a > 0.
fn kronecker(d: &BigInt, a: u64) -> i32 {
    if a == 0 {
        return 0;
    }
    if d.gcd(&BigInt::from(a)) != BigInt::one() {
        return 0;
    }
    let mut a = a;
    let mut r = 1;
    while a % 2 == 0 {
        a /= 2;
        let m8 = d.mod_floor(&BigInt::from(8)).to_u64().expect("small");
        r *= if m8 == 1 || m8 == 7 { 1 } else { -1 };
    }
    if a == 1 {
        r
    } else {
        r * jacobi(d, a)
    }
}

fn fundamental_discriminant(d: &BigInt) -> BigInt {
    let mut core = if d.is_negative() { -BigInt::one() } else { BigInt::one() };
    for (q, e) in factor(d) {
        if e % 2 == 1 {
            core *= BigInt::from(q);
        }
    }
    if core.mod_floor(&BigInt::from(4)) == BigInt::one() {
        core
    } else {
        core * BigInt::from(4)
    }
}

/// Γ(j/2).
fn gamma_half(j: u64) -> Num {
    if j % 2 == 0 {
        return Num::rat(Rational::from_integer(factorial(j / 2 - 1)));
    }
    let k = (j - 1) / 2;
    let r = Rational::new(factorial(2 * k), BigInt::from(4).pow(k as u32) * factorial(k));
    Num::pi_pow(r, Rational::new(BigInt::one(), BigInt::from(2)))
}

/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2·(2k)!).
fn zeta_even(k: u64, b: &[Rational]) -> Num {
    let sign = if k % 2 == 1 { Rational::one() } else { -Rational::one() };
    let r = sign * &b[2 * k as usize] * Rational::from_integer(BigInt::from(2).pow(2 * k as u32))
        / Rational::from_integer(BigInt::from(2) * factorial(2 * k));
    Num::pi_pow(r, Rational::from_integer(BigInt::from(2 * k)))
}

/// L(s, χ_D) for a fundamental discriminant D with χ_D(−1) = (−1)^s.
fn l_value(s: u64, d0: &BigInt, b: &[Rational]) -> Num {
    let f = d0.abs();
    let fu = f.to_u64().expect("conductor fits in u64");
    let delta = u64::from(d0.is_negative());
    let bgen = if fu == 1 {
        if s == 1 {
            Rational::new(BigInt::one(), BigInt::from(2))
        } else {
            b[s as usize].clone()
        }
    } else {
        let mut acc = Rational::zero();
        for a in 1..=fu {
            let chi = kronecker(d0, a);
            if chi != 0 {
                let x = Rational::new(BigInt::from(a), f.clone());
                acc += Rational::from_integer(BigInt::from(chi)) * bernoulli_poly(s as usize, &x, b);
            }
        }
        acc * Rational::from_integer(f.pow(s as u32 - 1))
    };
    let sign = if ((s - delta) / 2) % 2 == 0 { -Rational::one() } else { Rational::one() };
    let r = sign * Rational::new(BigInt::one(), BigInt::from(2)) * Rational::from_integer(BigInt::from(2).pow(s as u32))
        / Rational::from_integer(f.pow(s as u32))
        * bgen
        / Rational::from_integer(factorial(s));
    Num::pi_pow(r, Rational::from_integer(BigInt::from(s))).mul(&Num::sqrt(&f))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Sign {
    Unsigned,
    Plus,
    Minus,
}

/// Mass factor of a species t with the given sign.
fn species_mass(t: i64, sign: Sign, p: u64) -> Result<Rational> {
    let pr = |e: i64| pow_rat(p, e);
    let prod = |upto: i64| (1..=upto).fold(Rational::one(), |acc, i| acc * (Rational::one() - pr(-2 * i)));
    let two = Rational::from_integer(BigInt::from(2));
    match sign {
        Sign::Unsigned => Ok(Rational::one() / (two * prod(t / 2))),
        Sign::Plus if t == 0 => Ok(Rational::one()),
        Sign::Minus if t == 0 => Err(GenusError::UnsupportedAt(p)),
        _ => {
            let eps = if sign == Sign::Plus { Rational::one() } else { -Rational::one() };
            Ok(Rational::one() / (two * prod(t / 2 - 1) * (Rational::one() - eps * pr(-(t / 2)))))
        }
    }
}

struct Constituents {
    /// scale → Gram blocks (1×1 or 2×2)
    blocks: BTreeMap<i64, Vec<RatMatrix>>,
}

impl Constituents {
    fn new(g: &RatMatrix, p: u64) -> Constituents {
        let mut blocks: BTreeMap<i64, Vec<RatMatrix>> = BTreeMap::new();
        for (s, _, b) in jordan_gram(g, p) {
            blocks.entry(s).or_default().push(b);
        }
        Constituents { blocks }
    }

    fn dim(&self, s: i64) -> i64 {
        self.blocks.get(&s).map_or(0, |bs| bs.iter().map(|b| b.rows() as i64).sum())
    }

    fn cross(&self) -> i64 {
        let sc: Vec<i64> = self.blocks.keys().copied().collect();
        let mut c = 0;
        for (a, &i) in sc.iter().enumerate() {
            for &j in &sc[a + 1..] {
                c += (j - i) * self.dim(i) * self.dim(j);
            }
        }
        c
    }

    fn type_one(&self, s: i64) -> bool {
        self.blocks.get(&s).is_some_and(|bs| bs.iter().any(|b| b.rows() == 1))
    }

    /// Unit part of the determinant of the scale-s constituent.
    fn unit_det(&self, s: i64, p: u64) -> Rational {
        self.blocks.get(&s).map_or(Rational::one(), |bs| {
            bs.iter().map(|b| b.det() * pow_rat(p, -s * b.rows() as i64)).product()
        })
    }
}

/// Local factor at p without the generic Euler factor, and the cross exponent.
fn local_mass(g: &RatMatrix, p: u64) -> Result<(Rational, i64)> {
    let c = Constituents::new(g, p);
    let mut m = Rational::one();
    if p != 2 {
        for &s in c.blocks.keys() {
            let n = c.dim(s);
            let (t, sign) = if n % 2 == 1 {
                (n, Sign::Unsigned)
            } else {
                let mut u = c.unit_det(s, p);
                if (n / 2) % 2 == 1 {
                    u = -u;
                }
                let r = residue(&u, p).expect("unit");
                let sq = latmax_ffquadric::field::is_square(r, p);
                (n, if sq { Sign::Plus } else { Sign::Minus })
            };
            m *= species_mass(t, sign, p)?;
        }
        return Ok((m, c.cross()));
    }
    let lo = *c.blocks.keys().next().expect("nonempty") - 1;
    let hi = *c.blocks.keys().last().expect("nonempty") + 1;
    let n_two: i64 = c.blocks.keys().filter(|&&s| !c.type_one(s)).map(|&s| c.dim(s)).sum();
    let n_one_one = (lo..hi).filter(|&s| c.type_one(s) && c.type_one(s + 1)).count() as i64;
    for s in lo..=hi {
        let n = c.dim(s);
        let bound = c.type_one(s - 1) || c.type_one(s + 1);
        let unit_mod = |x: Rational, m: u64| residue(&x, m).expect("2-adic unit");
        let (t, octane) = if c.type_one(s) {
            let mut oct: i64 = 0;
            for b in &c.blocks[&s] {
                if b.rows() == 1 {
                    oct += if unit_mod(b.get(0, 0) * pow_rat(2, -s), 4) == 1 { 1 } else { -1 };
                } else {
                    let d = unit_mod(b.det() * pow_rat(2, -2 * s), 8);
                    oct += if d == 1 || d == 7 { 0 } else { 4 };
                }
            }
            (n - 1, oct.rem_euclid(8))
        } else {
            let d = unit_mod(c.unit_det(s, 2), 8);
            (n, if d == 1 || d == 7 { 0 } else { 4 })
        };
        let (t, sign) = if bound || octane == 2 || octane == 6 {
            (t, Sign::Unsigned)
        } else {
            let tt = if t % 2 == 0 { t } else { t - 1 };
            (tt, if matches!(octane, 0 | 1 | 7) { Sign::Plus } else { Sign::Minus })
        };
        m *= species_mass(t, sign, 2)?;
    }
    m *= pow_rat(2, n_one_one - n_two);
    Ok((m, c.cross()))
}

/// Mass of a primitive integral positive definite Gram matrix of rank ≥ 2.
fn mass_of_gram(g: &RatMatrix) -> Result<Rational> {
    let n = g.rows() as u64;
    let d = g.det().to_integer();
    let primes = prime_divisors(&(&d * BigInt::from(2)));
    let s = n.div_ceil(2);
    let b = bernoulli_numbers((n + 2) as usize);
    let mut val = Num::pi_pow(
        Rational::from_integer(BigInt::from(2)),
        -Rational::new(BigInt::from(n * (n + 1)), BigInt::from(4)),
    );
    for j in 1..=n {
        val = val.mul(&gamma_half(j));
    }
    for k in 1..s {
        val = val.mul(&zeta_even(k, &b));
    }
    if n % 2 == 0 {
        let sign = if s % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        let d0 = fundamental_discriminant(&(sign * &d));
        val = val.mul(&l_value(s, &d0, &b));
        for &p in &primes {
            let chi = Rational::from_integer(BigInt::from(kronecker(&d0, p)));
            val = val.mul_rat(&(Rational::one() - chi * pow_rat(p, -(s as i64))));
        }
    }
    for &p in &primes {
        let (mp, c2) = local_mass(g, p)?;
        let euler = (1..s as i64).fold(Rational::one(), |acc, k| acc * (Rational::one() - pow_rat(p, -2 * k)));
        val = val.mul_rat(&(Rational::from_integer(BigInt::from(2)) * euler * mp));
        val = val.mul_rat(&pow_rat(p, c2.div_euclid(2)));
        if c2 % 2 == 1 {
            val = val.mul(&Num::sqrt(&BigInt::from(p)));
        }
    }
    assert!(val.e.is_zero() && val.m.is_one(), "transcendental parts of the mass must cancel");
    Ok(val.r)
}

/// Minkowski–Siegel mass Σ 1/|Aut(L′)| over the classes L′ in the genus of L.
pub fn siegel_mass(l: &Lattice) -> Result<Rational> {
    let q = l.form_gram();
    if !is_positive_definite(&q.row_vecs()) {
        return Err(GenusError::NotPositiveDefinite);
    }
    if l.dim() == 1 {
        return Ok(Rational::new(BigInt::one(), BigInt::from(2)));
    }
    let content = q.entries().iter().fold(Rational::zero(), |acc, x| rat_gcd(&acc, x));
    mass_of_gram(&q.scale(&content.recip()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use latmax_core::{rat, FormKind, Space};
    use std::sync::Arc;

    fn qlat(gram: Vec<Vec<i64>>) -> Lattice {
        Lattice::standard(Arc::new(Space::new(FormKind::Quadratic, RatMatrix::from_i64(&gram)).unwrap()))
    }

    fn identity(n: usize) -> Vec<Vec<i64>> {
        (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
    }

    #[test]
    fn odd_unimodular_single_class() {
        for n in 2..=8usize {
            let expect = Rational::new(BigInt::one(), BigInt::from(2).pow(n as u32) * factorial(n as u64));
            assert_eq!(siegel_mass(&qlat(identity(n))).unwrap(), expect, "rank {n}");
        }
    }

    #[test]
    fn two_class_genera() {
        // ℤ⁹ and ℤ¹⁰ each share their genus with one more class (E₈ ⊕ ℤ, E₈ ⊕ ℤ²)
        assert_eq!(siegel_mass(&qlat(identity(9))).unwrap(), Rational::new(17.into(), 2786918400u64.into()));
        assert_eq!(siegel_mass(&qlat(identity(10))).unwrap(), Rational::new(1.into(), 2229534720u64.into()));
    }

    #[test]
    fn root_lattices() {
        let a2 = vec![vec![2, 1], vec![1, 2]];
        assert_eq!(siegel_mass(&qlat(a2)).unwrap(), rat(1, 12));
        let d4 = vec![vec![2, -1, 0, 0], vec![-1, 2, -1, -1], vec![0, -1, 2, 0], vec![0, -1, 0, 2]];
        assert_eq!(siegel_mass(&qlat(d4)).unwrap(), rat(1, 1152));
        let z2a2 = vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 2, 1], vec![0, 0, 1, 2]];
        assert_eq!(siegel_mass(&qlat(z2a2)).unwrap(), rat(1, 96));
    }

    #[test]
    fn mass_is_scale_invariant() {
        let l = qlat(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 3]]);
        let m = qlat(vec![vec![6, 0, 0], vec![0, 6, 0], vec![0, 0, 18]]);
        assert_eq!(siegel_mass(&l).unwrap(), siegel_mass(&m).unwrap());
    }

    #[test]
    fn rank_one() {
        assert_eq!(siegel_mass(&qlat(vec![vec![7]])).unwrap(), rat(1, 2));
    }

    #[test]
    fn symbols() {
        assert_eq!(kronecker(&BigInt::from(-4), 3), -1);
        assert_eq!(kronecker(&BigInt::from(5), 2), -1);
        assert_eq!(kronecker(&BigInt::from(-3), 7), 1);
        assert_eq!(fundamental_discriminant(&BigInt::from(-12)), BigInt::from(-3));
        assert_eq!(fundamental_discriminant(&BigInt::from(8)), BigInt::from(8));
        assert_eq!(bernoulli_numbers(4)[4], rat(-1, 30));
    }
}
