use std::sync::Arc;

use latmax_core::num_traits::Zero;
use latmax_core::rational::residue;
use latmax_core::{FormKind, Ideal, Lattice, RatMatrix, Rational, Space};
use latmax_ffquadric::{default_max_points, projective_points};

use crate::bilinear::maximal_bilinear;
use crate::even::{even_sublattice_at_p, is_a_even_at_p};
use crate::{MaximalError, Result};

/// Q(L) ⊆ a: Q(eᵢ) ∈ a and H(eᵢ, eⱼ) ∈ a on a basis.
pub fn is_quadratic_a_valued(l: &Lattice, a: &Ideal) -> bool {
    let q = l.form_gram();
    let n = l.dim();
    (0..n).all(|i| {
        a.contains(q.get(i, i)) && (i + 1..n).all(|j| a.contains(&(q.get(i, j) * Rational::from_integer(2.into()))))
    })
}

fn coords(x: &[u64]) -> Vec<Rational> {
    x.iter().map(|&c| Rational::from_integer(c.into())).collect()
}

/// Residue of x/a mod 2, for 2-integral x/a.
fn par(x: &Rational, a: &Ideal) -> u64 {
    residue(&(x / a.generator()), 2).expect("2-integral")
}

/// The 2-neighbor of an a-valued (for H) lattice at the line x, if x lies on the
/// residual quadric Q ∈ 2a, is nonsingular, and lifts to v with Q(v) ∈ 4a.
///
/// On L/2L the correction Q(x + 2u) − Q(x) ≡ 2a·Σ uᵢ(gᵢ + dᵢ) (mod 4a) is linear in u,
/// with gᵢ = H(x, eᵢ)/a and dᵢ = H(eᵢ, eᵢ)/a mod 2, so a lift is a single basis shift.
fn two_neighbor(l: &Lattice, a: &Ideal, x: &[u64]) -> Option<Lattice> {
    let n = l.dim();
    let qg = l.form_gram();
    let hg = l.gram();
    let two_a = a.scale(&Rational::from_integer(2.into()));
    let xv = coords(x);
    let qx = qg.bilinear(&xv, &xv);
    if !two_a.contains(&qx) {
        return None;
    }
    let hx = hg.left_mul_vec(&xv);
    if hx.iter().all(|h| two_a.contains(h)) {
        return None;
    }
    let g: Vec<u64> = hx.iter().map(|h| par(h, a)).collect();
    let d: Vec<u64> = (0..n).map(|i| par(hg.get(i, i), a)).collect();
    let mut v = xv.clone();
    if residue(&(&qx / two_a.generator()), 2) == Some(1) {
        let j = (0..n).find(|&j| (g[j] + d[j]) % 2 == 1)?;
        v[j] += Rational::from_integer(2.into());
    }
    debug_assert!(a.scale(&Rational::from_integer(4.into())).contains(&qg.bilinear(&v, &v)));
    // L'' = {y : H(v, y) ∈ 2a}, then adjoin v/2
    let c: Vec<u64> = hg.left_mul_vec(&v).iter().map(|h| par(h, a)).collect();
    let j0 = c.iter().position(|&cj| cj == 1).expect("nonsingular");
    let one = Rational::from_integer(1.into());
    let mut rows: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r = vec![Rational::zero(); n];
            if i == j0 {
                r[i] = Rational::from_integer(2.into());
            } else {
                r[i] = one.clone();
                if c[i] == 1 {
                    r[j0] = one.clone();
                }
            }
            r
        })
        .collect();
    rows.push(v.iter().map(|c| c / Rational::from_integer(2.into())).collect());
    let basis = RatMatrix::from_rows(&rows).mul(l.basis());
    Lattice::new(l.space().clone(), basis).ok()
}

/// Maximal lattice with Q(L) ⊆ a containing a rescaling of `start`.
///
/// First a maximal a-valued lattice for H; if it is not a-even at 2, the first a-even
/// 2-neighbor in point order replaces it, and failing that its even sublattice.
pub fn maximal_quadratic(space: &Arc<Space>, a: &Ideal, start: Option<&Lattice>) -> Result<Lattice> {
    if space.kind() != FormKind::Quadratic {
        return Err(MaximalError::NotQuadratic);
    }
    let l = maximal_bilinear(space, a, start)?;
    if is_a_even_at_p(&l, a, 2) {
        debug_assert!(is_quadratic_a_valued(&l, a));
        return Ok(l);
    }
    for x in projective_points(2, l.dim(), default_max_points())? {
        if let Some(nb) = two_neighbor(&l, a, &x) {
            if is_quadratic_a_valued(&nb, a) {
                return Ok(nb);
            }
        }
    }
    let even = even_sublattice_at_p(&l, a, 2)?.sublattice;
    debug_assert!(is_quadratic_a_valued(&even, a));
    Ok(even)
}
