use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{self, add, mul, neg, sub};
use crate::form::FpForm;
use crate::linalg;
use crate::points::projective_points_unbounded;
use crate::{FfError, Result};

const RANDOM_TRIALS: usize = 64;

/// Isotropy of a non-degenerate form, decided from dimension and determinant alone.
pub fn is_isotropic(f: &FpForm) -> Result<bool> {
    if f.is_degenerate() {
        return Err(FfError::Degenerate);
    }
    let p = f.p();
    Ok(match f.dim() {
        0 | 1 => false,
        2 => p == 2 || field::is_square(neg(f.det(), p), p),
        _ => true,
    })
}

/// A nonzero v with Q_B(v) = 0: random lines first, then an exhaustive sweep of P(V).
pub fn find_isotropic_vector(f: &FpForm, seed: u64) -> Result<Vec<u64>> {
    if !is_isotropic(f)? {
        return Err(FfError::Anisotropic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIALS {
        if let Some(v) = line_trial(f, &mut rng) {
            return Ok(linalg::normalize(&v, f.p()));
        }
    }
    exhaustive_isotropic(f).ok_or(FfError::Anisotropic)
}

fn line_trial(f: &FpForm, rng: &mut ChaCha8Rng) -> Option<Vec<u64>> {
    let (p, n) = (f.p(), f.dim());
    let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    let m: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
    if linalg::rank(&[a.clone(), m.clone()], p) < 2 {
        return None;
    }
    let (qa, qm, bam) = (f.q(&a), f.q(&m), f.b(&a, &m));
    if qa == 0 {
        return Some(a);
    }
    if qm == 0 {
        return Some(m);
    }
    // Q(a + t·m) = Q(a) + 2t·B(a,m) + t²·Q(m)
    let t = if p == 2 {
        // cross term vanishes; t = 1 works iff Q(a) = Q(m)
        if qa == qm {
            1
        } else {
            return None;
        }
    } else {
        let disc = sub(mul(bam, bam, p), mul(qa, qm, p), p);
        let r = field::sqrt(disc, p)?;
        let inv_qm = field::inv(qm, p)?;
        mul(sub(r, bam, p), inv_qm, p)
    };
    let v: Vec<u64> = a.iter().zip(&m).map(|(&x, &y)| add(x, mul(t, y, p), p)).collect();
    debug_assert_eq!(f.q(&v), 0);
    Some(v)
}

fn exhaustive_isotropic(f: &FpForm) -> Option<Vec<u64>> {
    projective_points_unbounded(f.p(), f.dim()).find(|v| f.q(v) == 0)
}

/// w with B(v, w) = 1 and B(w, w) = 0, for isotropic v in odd characteristic.
pub fn hyperbolic_complement(f: &FpForm, v: &[u64]) -> Result<Vec<u64>> {
    let p = f.p();
    if p == 2 {
        return Err(FfError::Unsupported("hyperbolic complement in characteristic 2"));
    }
    if f.is_degenerate() {
        return Err(FfError::Degenerate);
    }
    if linalg::is_zero(v) || f.q(v) != 0 {
        return Err(FfError::NotIsotropic);
    }
    let n = f.dim();
    let w = (0..n)
        .map(|i| {
            let mut e = vec![0u64; n];
            e[i] = 1;
            e
        })
        .find(|e| f.b(v, e) != 0)
        .ok_or(FfError::Degenerate)?;
    let s = field::inv(f.b(v, &w), p).expect("nonzero");
    let w: Vec<u64> = w.iter().map(|&x| mul(x, s, p)).collect();
    // B(v,w) = 1 now; w ← w − (B(w,w)/2)·v kills B(w,w).
    let c = mul(f.q(&w), field::inv(2, p).expect("p odd"), p);
    let w: Vec<u64> = w.iter().zip(v).map(|(&x, &y)| sub(x, mul(c, y, p), p)).collect();
    debug_assert_eq!(f.b(v, &w), 1);
    debug_assert_eq!(f.q(&w), 0);
    Ok(w)
}

/// Brute-force isotropy check over all nonzero vectors.
pub fn is_isotropic_exhaustive(f: &FpForm) -> bool {
    exhaustive_isotropic(f).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropy_examples() {
        assert!(!is_isotropic(&FpForm::diagonal(3, &[1, 1]).unwrap()).unwrap());
        let f5 = FpForm::diagonal(5, &[1, 1]).unwrap();
        assert!(is_isotropic(&f5).unwrap());
        assert_eq!(f5.q(&[1, 2]), 0);
        let f2 = FpForm::new(2, vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(is_isotropic(&f2).unwrap());
        assert_eq!(f2.q(&[1, 0]), 0);
        assert_eq!(is_isotropic(&FpForm::diagonal(3, &[1, 0]).unwrap()), Err(FfError::Degenerate));
    }

    #[test]
    fn find_examples() {
        let f = FpForm::diagonal(7, &[1, -1]).unwrap();
        let v = find_isotropic_vector(&f, 0).unwrap();
        assert!(v == vec![1, 1] || v == vec![1, 6]);
        let h = FpForm::new(3, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let v = find_isotropic_vector(&h, 1).unwrap();
        assert!(v == vec![1, 0] || v == vec![0, 1]);
        let s = FpForm::diagonal(3, &[1, 1, 1]).unwrap();
        let v = find_isotropic_vector(&s, 2).unwrap();
        assert!(v.iter().all(|&x| x != 0));
        assert_eq!(find_isotropic_vector(&FpForm::diagonal(3, &[1, 1]).unwrap(), 0), Err(FfError::Anisotropic));
    }

    #[test]
    fn complement_examples() {
        let h = FpForm::new(5, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(hyperbolic_complement(&h, &[1, 0]).unwrap(), vec![0, 1]);
        for f in [FpForm::diagonal(5, &[1, -1]).unwrap(), FpForm::diagonal(5, &[1, 1]).unwrap()] {
            let v = find_isotropic_vector(&f, 3).unwrap();
            let w = hyperbolic_complement(&f, &v).unwrap();
            assert_eq!(f.b(&v, &w), 1);
            assert_eq!(f.q(&w), 0);
        }
        let h2 = FpForm::new(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(hyperbolic_complement(&h2, &[1, 0]).is_err());
    }
}
