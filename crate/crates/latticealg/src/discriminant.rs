use std::collections::{BTreeMap, BTreeSet};

use latmax_core::num_traits::{One, Signed, ToPrimitive, Zero};
use latmax_core::primes::factor_big;
use latmax_core::rational::{ord_p_int, residue};
use latmax_core::{format_rational, smith_with_transforms, BigInt, Ideal, Lattice, RatMatrix, Rational};
use latmax_ffquadric::FpForm;

use crate::duality::{dual, is_a_valued};
use crate::{LatError, Result};

/// |L^{#a} / L| = |det G| / a^n.
pub fn discriminant_order(l: &Lattice, a: &Ideal) -> Result<BigInt> {
    if !is_a_valued(l, a) {
        return Err(LatError::NotAValued(a.to_string()));
    }
    let n = l.dim() as i32;
    let q = l.gram().det().abs() / a.generator().pow(n);
    debug_assert!(q.is_integer());
    Ok(q.to_integer())
}

/// Primes dividing |L^{#a}/L|.
///
/// |det G| = det(M)²·|det G₀| with M the (triangular) basis and G₀ the ambient duality Gram, so
/// the candidates come from factoring the diagonal of M, det G₀ and a separately; the
/// order itself can be far too large to factor directly.
pub fn discriminant_primes(l: &Lattice, a: &Ideal) -> Result<Vec<u64>> {
    let order = discriminant_order(l, a)?;
    let b = l.basis();
    let mut pieces: Vec<Rational> = (0..l.dim()).map(|i| b.get(i, i).clone()).collect();
    pieces.push(l.space().bilinear_gram().det());
    pieces.push(a.generator().clone());
    let mut primes = BTreeSet::new();
    for x in &pieces {
        for n in [x.numer(), x.denom()] {
            if !n.is_zero() {
                primes.extend(factor_big(n).into_iter().map(|(p, _)| p));
            }
        }
    }
    primes
        .into_iter()
        .filter(|p| (&order % p).is_zero())
        .map(|p| p.to_u64().ok_or_else(|| LatError::PrimeTooLarge(p.to_string())))
        .collect()
}

/// Nontrivial elementary divisors of L^{#a} / L together with matching generators in L^{#a}.
fn structure(l: &Lattice, a: &Ideal) -> Result<Vec<(BigInt, Vec<Rational>)>> {
    if !is_a_valued(l, a) {
        return Err(LatError::NotAValued(a.to_string()));
    }
    let d = dual(l, a)?;
    let c = d.coordinate_matrix(l).to_integer();
    let s = smith_with_transforms(&c);
    // u·C·v = S, so u·M = S·(v⁻¹·D): the rows of v⁻¹·D generate the quotient
    let vinv = s.v.to_rational().inverse()?;
    let gens: RatMatrix = vinv.mul(d.basis());
    Ok(s.divisors
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_one())
        .map(|(i, e)| (e.clone(), gens.row(i).to_vec()))
        .collect())
}

pub fn discriminant_group(l: &Lattice, a: &Ideal) -> Result<Vec<BigInt>> {
    Ok(structure(l, a)?.into_iter().map(|(e, _)| e).collect())
}

/// The p-part of D_a(L) as an F_p-space with its induced form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePart {
    pub p: u64,
    pub dim: usize,
    /// Ambient vectors in L^{#a} whose classes form an F_p-basis.
    pub generators: Vec<Vec<Rational>>,
    /// B̃(gᵢ, gⱼ) ∈ p⁻¹a/a carried to F_p by multiplication with p/gen(a).
    pub form: FpForm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantModule {
    pub elementary_divisors: Vec<BigInt>,
    pub parts: BTreeMap<u64, PrimePart>,
}

impl DiscriminantModule {
    pub fn order(&self) -> BigInt {
        self.elementary_divisors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.elementary_divisors.is_empty()
    }
}

/// Discriminant module with an F_p-form for every prime part; every part must be elementary.
pub fn discriminant_module(l: &Lattice, a: &Ideal) -> Result<DiscriminantModule> {
    let st = structure(l, a)?;
    let mut parts = BTreeMap::new();
    let order: BigInt = st.iter().map(|(e, _)| e.clone()).product();
    if order.is_one() {
        return Ok(DiscriminantModule { elementary_divisors: Vec::new(), parts });
    }
    let bg = l.space().bilinear_gram();
    for p in discriminant_primes(l, a)? {
        let mut gens = Vec::new();
        for (e, g) in &st {
            match ord_p_int(e, p) {
                Some(0) | None => {}
                Some(1) => {
                    let cof = Rational::from_integer(e / BigInt::from(p));
                    gens.push(g.iter().map(|x| x * &cof).collect::<Vec<_>>());
                }
                Some(_) => return Err(LatError::Unsaturated(p)),
            }
        }
        let scale = Rational::from_integer(BigInt::from(p)) / a.generator();
        let gram: Vec<Vec<u64>> = gens
            .iter()
            .map(|x| {
                gens.iter()
                    .map(|y| {
                        let v = bg.bilinear(x, y) * &scale;
                        residue(&v, p).unwrap_or_else(|| {
                            panic!("value {} is not p-integral", format_rational(&v))
                        })
                    })
                    .collect()
            })
            .collect();
        let form = FpForm::from_residues(p, gram)?;
        parts.insert(p, PrimePart { p, dim: gens.len(), generators: gens, form });
    }
    let elementary_divisors = st.into_iter().map(|(e, _)| e).collect();
    Ok(DiscriminantModule { elementary_divisors, parts })
}
