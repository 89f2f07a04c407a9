//! Exact LLL on Gram matrices and Fincke–Pohst enumeration, both over ℚ.

use latmax_core::num_traits::{One, Signed, ToPrimitive, Zero};
use latmax_core::{BigInt, Rational};

use crate::{GenusError, Result};

/// Gram–Schmidt coefficients μ[i][j] (j < i) and squared lengths b[i] from a Gram matrix.
pub(crate) fn gso(g: &[Vec<Rational>]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
    let n = g.len();
    let mut mu = vec![vec![Rational::zero(); n]; n];
    let mut b: Vec<Rational> = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..i {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &mu[j][k] * &mu[i][k] * &b[k];
            }
            mu[i][j] = if b[j].is_zero() { Rational::zero() } else { s / &b[j] };
        }
        let mut s = g[i][i].clone();
        for k in 0..i {
            s -= &mu[i][k] * &mu[i][k] * &b[k];
        }
        b.push(s);
    }
    (mu, b)
}

pub(crate) fn is_positive_definite(g: &[Vec<Rational>]) -> bool {
    gso(g).1.iter().all(|x| x.is_positive())
}

fn round(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Reduced Gram matrix and the integer transform T (reduced basis = T·basis).
#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    pub transform: Vec<Vec<BigInt>>,
    pub gram: Vec<Vec<Rational>>,
}

/// LLL with δ = 99/100 on a positive definite Gram matrix.
pub(crate) fn lll(gram: &[Vec<Rational>]) -> Result<Reduced> {
    let n = gram.len();
    if !is_positive_definite(gram) {
        return Err(GenusError::NotPositiveDefinite);
    }
    let mut g = gram.to_vec();
    let mut t: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
    let delta = Rational::new(BigInt::from(99), BigInt::from(100));
    let mut k = 1;
    while k < n {
        let (mut mu, b) = gso(&g);
        for j in (0..k).rev() {
            let r = round(&mu[k][j]);
            if r.is_zero() {
                continue;
            }
            let rr = Rational::from_integer(r.clone());
            for c in 0..n {
                let x = &g[j][c] * &rr;
                g[k][c] -= x;
            }
            for c in 0..n {
                let x = &g[c][j] * &rr;
                g[c][k] -= x;
            }
            for c in 0..n {
                let x = &t[j][c] * &r;
                t[k][c] -= x;
            }
            for i in 0..j {
                let x = &mu[j][i] * &rr;
                mu[k][i] -= x;
            }
            mu[k][j] -= &rr;
        }
        let m = &mu[k][k - 1];
        if b[k] >= (&delta - m * m) * &b[k - 1] {
            k += 1;
        } else {
            g.swap(k, k - 1);
            for row in g.iter_mut() {
                row.swap(k, k - 1);
            }
            t.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    Ok(Reduced { transform: t, gram: g })
}

/// All nonzero x ∈ ℤⁿ with xᵀ·g·x ≤ bound, sorted by (value, x).
pub(crate) fn enumerate(g: &[Vec<Rational>], bound: &Rational) -> Vec<(Vec<i64>, Rational)> {
    let n = g.len();
    let (mu, b) = gso(g);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    if n > 0 {
        descend(&mu, &b, n - 1, bound.clone(), &mut x, &mut out);
    }
    let g_val = |v: &[i64]| -> Rational {
        let mut s = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                if v[i] != 0 && v[j] != 0 {
                    s += &g[i][j] * Rational::from_integer(BigInt::from(v[i] * v[j]));
                }
            }
        }
        s
    };
    let mut res: Vec<(Vec<i64>, Rational)> = out
        .into_iter()
        .filter(|v: &Vec<i64>| v.iter().any(|&c| c != 0))
        .map(|v| {
            let q = g_val(&v);
            (v, q)
        })
        .collect();
    res.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    res
}

fn descend(
    mu: &[Vec<Rational>],
    b: &[Rational],
    i: usize,
    rem: Rational,
    x: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let n = x.len();
    // center of the admissible interval for x_i given x_{i+1..}
    let mut c = Rational::zero();
    for j in i + 1..n {
        if x[j] != 0 {
            c -= &mu[j][i] * Rational::from_integer(BigInt::from(x[j]));
        }
    }
    let fits = |v: i64| -> Option<Rational> {
        let d = Rational::from_integer(BigInt::from(v)) - &c;
        let used = &b[i] * &d * &d;
        (used <= rem).then(|| &rem - used)
    };
    let start = c.floor().to_integer().to_i64().expect("coordinate fits in i64");
    let visit = |v: i64, left: Rational, x: &mut Vec<i64>, out: &mut Vec<Vec<i64>>| {
        x[i] = v;
        if i == 0 {
            out.push(x.clone());
        } else {
            descend(mu, b, i - 1, left, x, out);
        }
    };
    let mut v = start;
    while let Some(left) = fits(v) {
        visit(v, left, x, out);
        v -= 1;
    }
    let mut v = start + 1;
    while let Some(left) = fits(v) {
        visit(v, left, x, out);
        v += 1;
    }
    x[i] = 0;
}
