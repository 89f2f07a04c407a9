use latmax_core::num_traits::Zero;
use latmax_core::rational::residue;
use latmax_core::{Ideal, Lattice, RatMatrix, Rational};
use latmax_latticealg::{is_a_valued, LatError};

use crate::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenSublatticeResult {
    pub sublattice: Lattice,
    pub index: u64,
    pub prime: u64,
}

/// Residues of B(eᵢ, eᵢ)/a mod 2 on the basis; B is the duality form.
fn diagonal_parities(l: &Lattice, a: &Ideal) -> Vec<u64> {
    let g = l.gram();
    (0..l.dim())
        .map(|i| residue(&(g.get(i, i) / a.generator()), 2).expect("a-valued at 2"))
        .collect()
}

/// B(x, x) ∈ p^{ord_p(2a)} for every x ∈ L (B the duality form).
pub fn is_a_even_at_p(l: &Lattice, a: &Ideal, p: u64) -> bool {
    p != 2 || diagonal_parities(l, a).iter().all(|&c| c == 0)
}

/// {x ∈ L : B(x, x) ∈ p^{ord_p(2a)}}. Only p = 2 can give a proper sublattice, since
/// x ↦ B(x, x)/a mod 2 is additive on L/2L.
pub fn even_sublattice_at_p(l: &Lattice, a: &Ideal, p: u64) -> Result<EvenSublatticeResult> {
    if !is_a_valued(l, a) {
        return Err(LatError::NotAValued(a.to_string()).into());
    }
    let unchanged = EvenSublatticeResult { sublattice: l.clone(), index: 1, prime: p };
    if p != 2 {
        return Ok(unchanged);
    }
    let c = diagonal_parities(l, a);
    let Some(j0) = c.iter().position(|&x| x == 1) else {
        return Ok(unchanged);
    };
    let n = l.dim();
    let one = Rational::from_integer(1.into());
    let rows: Vec<Vec<Rational>> = (0..n)
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
    let basis = RatMatrix::from_rows(&rows).mul(l.basis());
    let sub = Lattice::new(l.space().clone(), basis)?;
    Ok(EvenSublatticeResult { sublattice: sub, index: 2, prime: 2 })
}
