//! Row reduction over F_p.

use crate::field::{inv, mul, sub};

/// Reduced row echelon form of the row span; returns (nonzero rows, pivot columns).
pub fn rref(rows: &[Vec<u64>], p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let n = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] % p != 0) else { continue };
        a.swap(r, piv);
        let s = inv(a[r][c], p).expect("nonzero pivot");
        for x in a[r].iter_mut() {
            *x = mul(*x, s, p);
        }
        for i in 0..a.len() {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in 0..n {
                    a[i][j] = sub(a[i][j], mul(f, a[r][j], p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    rref(rows, p).0.len()
}

/// Basis of {x : M·x = 0} for an m×n matrix given by rows.
pub fn kernel(m: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let (r, pivots) = rref(m, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; n];
            v[f] = 1;
            for (row, &pc) in r.iter().zip(&pivots) {
                v[pc] = sub(0, row[f], p);
            }
            v
        })
        .collect()
}

/// Standard basis vectors completing `sub` to a basis of F_p^n, in index order.
pub fn complement(sub_basis: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut cur: Vec<Vec<u64>> = sub_basis.to_vec();
    let mut out = Vec::new();
    let mut rk = rank(&cur, p);
    for i in 0..n {
        let mut e = vec![0u64; n];
        e[i] = 1;
        cur.push(e.clone());
        let r = rank(&cur, p);
        if r > rk {
            rk = r;
            out.push(e);
        } else {
            cur.pop();
        }
    }
    out
}

/// Linear combination Σ cᵢ·vᵢ.
pub fn combine(coeffs: &[u64], vectors: &[Vec<u64>], n: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; n];
    for (c, v) in coeffs.iter().zip(vectors) {
        if *c == 0 {
            continue;
        }
        for j in 0..n {
            out[j] = crate::field::add(out[j], mul(*c, v[j], p), p);
        }
    }
    out
}

pub fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Scale so the first nonzero coordinate is 1.
pub fn normalize(v: &[u64], p: u64) -> Vec<u64> {
    match v.iter().find(|&&x| x != 0) {
        None => v.to_vec(),
        Some(&lead) => {
            let s = inv(lead, p).expect("nonzero");
            v.iter().map(|&x| mul(x, s, p)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_and_complement() {
        let m = vec![vec![1, 1, 0], vec![0, 0, 0]];
        let k = kernel(&m, 3, 3);
        assert_eq!(k, vec![vec![2, 1, 0], vec![0, 0, 1]]);
        let c = complement(&k, 3, 3);
        assert_eq!(c, vec![vec![1, 0, 0]]);
        assert_eq!(normalize(&[0, 2, 1], 3), vec![0, 1, 2]);
    }
}
