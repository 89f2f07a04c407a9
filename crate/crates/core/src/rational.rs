use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::error::{CoreError, Result};

pub type Int = BigInt;
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// Accepts `p`, `-p`, `p/q` with optional surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || CoreError::Parse(s.to_string());
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ord_p_int(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.abs();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// p-adic valuation; `None` for zero.
pub fn ord_p(x: &Rational, p: u64) -> Option<i64> {
    let vn = ord_p_int(x.numer(), p)?;
    let vd = ord_p_int(x.denom(), p).unwrap_or(0);
    Some(vn - vd)
}

/// Residue of a p-integral rational modulo m; `None` if the denominator is not invertible mod m.
pub fn residue(x: &Rational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let d = x.denom().mod_floor(&mb);
    let d = d.to_u64()?;
    let inv = inverse_mod(d, m)?;
    let n = x.numer().mod_floor(&mb).to_u64()?;
    Some(((n as u128 * inv as u128) % m as u128) as u64)
}

/// Residue modulo m of x·p^(-ord_p x), the unit part of x at p.
pub fn unit_residue(x: &Rational, p: u64, m: u64) -> Option<u64> {
    let v = ord_p(x, p)?;
    let u = x * pow_rat(p, -v);
    residue(&u, m)
}

pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (m as i128, (a % m) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

pub fn pow_rat(p: u64, e: i64) -> Rational {
    let b = BigInt::from(p);
    let mag = num_traits::pow(b, e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Generator of the fractional ideal aℤ + bℤ (zero if both vanish).
pub fn rat_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let n = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(n, a.denom() * b.denom())
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Positive rational generator of a fractional ideal of ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    generator: Rational,
}

impl Ideal {
    pub fn new(generator: Rational) -> Result<Self> {
        if !generator.is_positive() {
            return Err(CoreError::BadIdeal(format_rational(&generator)));
        }
        Ok(Ideal { generator })
    }

    /// The ideal generated by x, i.e. |x|ℤ.
    pub fn generated_by(x: &Rational) -> Result<Self> {
        Ideal::new(x.abs())
    }

    pub fn one() -> Self {
        Ideal { generator: Rational::one() }
    }

    pub fn from_i64(n: i64) -> Self {
        Ideal::new(int(n)).expect("positive generator")
    }

    pub fn generator(&self) -> &Rational {
        &self.generator
    }

    pub fn ord_p(&self, p: u64) -> i64 {
        ord_p(&self.generator, p).expect("nonzero")
    }

    pub fn contains(&self, x: &Rational) -> bool {
        is_integer(&(x / &self.generator))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        other.contains(&self.generator)
    }

    pub fn mul(&self, other: &Ideal) -> Ideal {
        Ideal { generator: &self.generator * &other.generator }
    }

    pub fn inv(&self) -> Ideal {
        Ideal { generator: self.generator.recip() }
    }

    pub fn scale(&self, c: &Rational) -> Ideal {
        Ideal { generator: (&self.generator * c).abs() }
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.generator))
    }
}
