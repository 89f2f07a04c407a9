use latmax_core::num_traits::Zero;
use latmax_core::{int, rat_gcd, FormKind, Ideal, Lattice, Rational};

use crate::Result;

/// L^{#a} = {v : B(v, L) ⊆ a}, computed as a·G⁻¹·M.
pub fn dual(l: &Lattice, a: &Ideal) -> Result<Lattice> {
    let g = l.gram();
    let ginv = g.inverse()?;
    let basis = ginv.mul(l.basis()).scale(a.generator());
    Ok(Lattice::new(l.space().clone(), basis)?)
}

fn gcd_ideal<'a>(xs: impl Iterator<Item = &'a Rational>) -> Ideal {
    let g = xs.fold(Rational::zero(), |acc, x| rat_gcd(&acc, x));
    Ideal::new(g).expect("non-degenerate Gram has a nonzero entry")
}

/// Ideal generated by B(L, L) (by H(L, L) on a quadratic space).
pub fn bilinear_value_ideal(l: &Lattice) -> Ideal {
    let g = l.gram();
    gcd_ideal(g.entries().iter())
}

/// Bilinear lattices: B(L, L). Quadratic lattices: the ideal generated by Q(L), spanned by
/// Q(eᵢ) and H(eᵢ, eⱼ) over a basis.
pub fn value_ideal(l: &Lattice) -> Ideal {
    match l.kind() {
        FormKind::Bilinear => bilinear_value_ideal(l),
        FormKind::Quadratic => {
            let q = l.form_gram();
            let n = l.dim();
            let two = int(2);
            let mut vals = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in i..n {
                    vals.push(if i == j { q.get(i, i).clone() } else { q.get(i, j) * &two });
                }
            }
            gcd_ideal(vals.iter())
        }
    }
}

/// B(L, L) ⊆ a, equivalently L ⊆ L^{#a}.
pub fn is_a_valued(l: &Lattice, a: &Ideal) -> bool {
    bilinear_value_ideal(l).is_subset_of(a)
}

pub fn is_modular(l: &Lattice, a: &Ideal) -> Result<bool> {
    Ok(dual(l, a)? == *l)
}
