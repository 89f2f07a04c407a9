//! Hermite and Smith normal forms over ℤ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rational::from_int;

/// Row HNF of the ℤ-row-span of `m`: upper echelon, positive pivots, entries above a
/// pivot reduced into [0, pivot). Zero rows are dropped, so the result has rank-many rows.
pub fn hnf_int(m: &IntMatrix) -> IntMatrix {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a: Vec<Vec<BigInt>> = (0..nr).map(|i| m.row(i).to_vec()).collect();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        loop {
            let piv = (r..nr)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(piv) = piv else { break };
            a.swap(r, piv);
            let mut clean = true;
            for i in r + 1..nr {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let (head, tail) = a.split_at_mut(i);
                sub_multiple(&mut tail[0], &head[r], &q, c);
                if !a[i][c].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r][c..].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = a.split_at_mut(r);
            sub_multiple(&mut head[i], &tail[0], &q, c);
        }
        r += 1;
    }
    let data = a.into_iter().take(r).flatten().collect();
    IntMatrix::new(r, nc, data)
}

fn sub_multiple(dst: &mut [BigInt], src: &[BigInt], q: &BigInt, from: usize) {
    for j in from..dst.len() {
        if !src[j].is_zero() {
            dst[j] -= q * &src[j];
        }
    }
}

/// Canonical row HNF of a rational matrix: scale by the denominator lcm, reduce, unscale.
/// Fails with "degenerate basis" when the rank is below min(rows, cols).
pub fn hnf(m: &RatMatrix) -> Result<RatMatrix> {
    let (im, d) = m.to_scaled_integer();
    let h = hnf_int(&im);
    if h.rows() < m.rows().min(m.cols()) {
        return Err(CoreError::DegenerateBasis);
    }
    let d = from_int(&d);
    Ok(h.to_rational().scale(&d.recip()))
}

/// Smith form with transforms: `u · m · v = diag(divisors)` (padded with zeros if rectangular).
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub divisors: Vec<BigInt>,
}

pub fn smith_with_transforms(m: &IntMatrix) -> SmithForm {
    let (nr, nc) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(nr);
    let mut v = IntMatrix::identity(nc);
    let mut divisors = Vec::new();
    for t in 0..nr.min(nc) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nr {
                for j in t..nc {
                    let x = a.get(i, j);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return SmithForm { u, v, divisors };
            };
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
            let mut clean = true;
            for i in t + 1..nr {
                let q = a.get(i, t).div_floor(a.get(t, t));
                let nq = -q;
                a.add_row_multiple(i, t, &nq);
                u.add_row_multiple(i, t, &nq);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..nc {
                let q = a.get(t, j).div_floor(a.get(t, t));
                let nq = -q;
                a.add_col_multiple(j, t, &nq);
                v.add_col_multiple(j, t, &nq);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let piv = a.get(t, t).clone();
            let bad_row = (t + 1..nr).find(|&i| (t + 1..nc).any(|j| !a.get(i, j).is_multiple_of(&piv)));
            match bad_row {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        divisors.push(a.get(t, t).clone());
    }
    SmithForm { u, v, divisors }
}

/// Elementary divisors d₁ | d₂ | … of a nonsingular square integer matrix.
pub fn smith(m: &IntMatrix) -> Result<Vec<BigInt>> {
    if m.rows() != m.cols() {
        return Err(CoreError::DimensionMismatch { expected: m.rows(), got: m.cols() });
    }
    let s = smith_with_transforms(m);
    if s.divisors.len() < m.rows() {
        return Err(CoreError::Singular);
    }
    Ok(s.divisors)
}
