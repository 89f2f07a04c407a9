use crate::{FfError, Result};

pub const DEFAULT_MAX_POINTS: u64 = 10_000_000;

/// Enumeration bound: `LATMAX_MAX_POINTS` if set and parseable, else 10⁷.
pub fn default_max_points() -> u64 {
    std::env::var("LATMAX_MAX_POINTS")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_POINTS)
}

/// Lines of F_p^n, each represented with first nonzero coordinate 1, in lexicographic order.
#[derive(Clone, Debug)]
pub struct ProjectivePoints {
    p: u64,
    cur: Option<Vec<u64>>,
}

impl Iterator for ProjectivePoints {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.clone()?;
        self.cur = successor(&out, self.p);
        Some(out)
    }
}

fn successor(v: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = v.len();
    let lead = v.iter().position(|&x| x != 0)?;
    let mut w = v.to_vec();
    // increment the tail after the leading 1 as a base-p number
    for i in (lead + 1..n).rev() {
        if w[i] + 1 < p {
            w[i] += 1;
            return Some(w);
        }
        w[i] = 0;
    }
    if lead == 0 {
        return None;
    }
    let mut w = vec![0u64; n];
    w[lead - 1] = 1;
    Some(w)
}

/// Number of points of P^{n-1}(F_p), saturating.
pub fn point_count(p: u64, n: usize) -> u64 {
    let mut total: u64 = 0;
    let mut pk: u64 = 1;
    for _ in 0..n {
        total = total.saturating_add(pk);
        pk = pk.saturating_mul(p);
    }
    total
}

/// Checks p^{n-1} against `max_points` before handing out the iterator.
pub fn projective_points(p: u64, n: usize, max_points: u64) -> Result<ProjectivePoints> {
    let need = (p as u128).pow(n.saturating_sub(1) as u32);
    if need > max_points as u128 {
        return Err(FfError::BoundExceeded { needed: need, bound: max_points });
    }
    Ok(projective_points_unbounded(p, n))
}

pub(crate) fn projective_points_unbounded(p: u64, n: usize) -> ProjectivePoints {
    let cur = if n == 0 {
        None
    } else {
        let mut v = vec![0u64; n];
        v[n - 1] = 1;
        Some(v)
    };
    ProjectivePoints { p, cur }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::FpForm;

    #[test]
    fn p1_over_f3() {
        let pts: Vec<_> = projective_points(3, 2, 100).unwrap().collect();
        assert_eq!(pts, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn counts() {
        assert_eq!(projective_points(2, 3, 100).unwrap().count(), 7);
        assert_eq!(point_count(2, 3), 7);
        assert_eq!(projective_points(5, 4, 1000).unwrap().count() as u64, point_count(5, 4));
        let f = FpForm::diagonal(3, &[1, 1, 1]).unwrap();
        let iso = projective_points(3, 3, 100).unwrap().filter(|v| f.q(v) == 0).count();
        assert_eq!(iso, 4);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(projective_points(7, 5, 1000), Err(FfError::BoundExceeded { .. })));
    }
}
