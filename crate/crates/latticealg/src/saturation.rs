use latmax_core::num_traits::{One, ToPrimitive};
use latmax_core::primes::factor_big;
use latmax_core::rational::pow_rat;
use latmax_core::{BigInt, Ideal, Lattice, Rational};

use crate::discriminant::discriminant_primes;
use crate::duality::{bilinear_value_ideal, dual, is_a_valued};
use crate::jordan::jordan_decomposition;
use crate::{LatError, Result};

/// Largest Jordan scale at p minus ord_p(a).
pub fn max_scale_index(l: &Lattice, p: u64, a: &Ideal) -> Result<i64> {
    let j = jordan_decomposition(l, p);
    let oa = a.ord_p(p);
    if j.min_scale().expect("positive rank") < oa {
        return Err(LatError::NotAValuedAt(p));
    }
    Ok(j.max_scale().expect("positive rank") - oa)
}

/// c with c²·B(L,L) ⊆ a, using the least power of each prime.
pub fn saturation_rescale(l: &Lattice, a: &Ideal) -> Result<Rational> {
    let b = bilinear_value_ideal(l);
    let ratio = a.generator() / b.generator();
    let mut c = Rational::one();
    for (p, _) in factor_big(ratio.numer()) {
        let p = p.to_u64().ok_or_else(|| LatError::PrimeTooLarge(p.to_string()))?;
        let gap = a.ord_p(p) - b.ord_p(p);
        if gap > 0 {
            c *= pow_rat(p, (gap + 1) / 2);
        }
    }
    Ok(c)
}

/// Saturated a-valued lattice containing (a rescaling of) L: while some maximal scale
/// index m_p is ≥ 2, L ← L + l·L^{#a} with l = ∏ p^⌈m_p/2⌉ over every discriminant prime.
///
/// Primes with m_p = 1 still contribute a factor p: p·L^{#a} ⊆ L there, so the step is
/// locally trivial, whereas leaving p out would break a-valuedness at p.
pub fn saturate(l: &Lattice, a: &Ideal) -> Result<Lattice> {
    let mut cur = if is_a_valued(l, a) { l.clone() } else { l.scale(&saturation_rescale(l, a)?)? };
    debug_assert!(is_a_valued(&cur, a));
    loop {
        let mut mult = BigInt::one();
        let mut done = true;
        for p in discriminant_primes(&cur, a)? {
            let m = max_scale_index(&cur, p, a)?;
            done &= m <= 1;
            mult *= BigInt::from(p).pow(((m + 1) / 2).to_u32().expect("small exponent"));
        }
        if done {
            return Ok(cur);
        }
        let d = dual(&cur, a)?;
        let scaled = d.scale(&Rational::from_integer(mult))?;
        cur = cur.sum(&scaled);
    }
}

/// a-valued with every maximal scale index ≤ 1.
pub fn is_saturated(l: &Lattice, a: &Ideal) -> Result<bool> {
    if !is_a_valued(l, a) {
        return Ok(false);
    }
    for p in discriminant_primes(l, a)? {
        if max_scale_index(l, p, a)? > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}
