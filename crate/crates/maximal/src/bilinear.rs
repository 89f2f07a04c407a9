use std::sync::Arc;

use latmax_core::{Ideal, Lattice, Rational, Space};
use latmax_ffquadric::{is_isotropic_exhaustive, witt_split};
use latmax_latticealg::{discriminant_module, saturate, PrimePart};

use crate::{MaximalError, Result};

/// Ambient vector Σ cᵢ·gᵢ for an F_p-coordinate vector c on the part's generators.
fn lift(part: &PrimePart, c: &[u64]) -> Vec<Rational> {
    let n = part.generators.first().map_or(0, Vec::len);
    let mut v = vec![Rational::from_integer(0.into()); n];
    for (ci, g) in c.iter().zip(&part.generators) {
        if *ci == 0 {
            continue;
        }
        let ci = Rational::from_integer((*ci).into());
        for (vk, gk) in v.iter_mut().zip(g) {
            *vk += &ci * gk;
        }
    }
    v
}

/// Vectors to adjoin at this prime in one pass, or none when the part is anisotropic.
///
/// At odd p the whole maximal totally isotropic subspace lifts to an a-valued
/// extension. At p = 2 a Q_B-isotropic subspace need not be B-isotropic (the form
/// [[0,1],[1,0]] over F_2 has Q_B ≡ 0), so only one vector is adjoined per pass.
fn isotropic_lifts(part: &PrimePart) -> Vec<Vec<Rational>> {
    let m = witt_split(&part.form).maximal_isotropic();
    if part.p == 2 {
        m.into_iter().take(1).map(|c| lift(part, &c)).collect()
    } else {
        m.iter().map(|c| lift(part, c)).collect()
    }
}

/// Maximal a-valued lattice for the duality form of `space` (B, or H on a
/// quadratic space), containing a rescaling of `start` (default: the standard lattice).
pub fn maximal_bilinear(space: &Arc<Space>, a: &Ideal, start: Option<&Lattice>) -> Result<Lattice> {
    let l0 = match start {
        Some(l) if l.space() != space => return Err(MaximalError::ForeignStart),
        Some(l) => l.clone(),
        None => Lattice::standard(space.clone()),
    };
    let mut l = saturate(&l0, a)?;
    loop {
        let dm = discriminant_module(&l, a)?;
        let lifts: Vec<Vec<Rational>> = dm.parts.values().flat_map(isotropic_lifts).collect();
        if lifts.is_empty() {
            break;
        }
        l = l.adjoin(&lifts);
    }
    certify_maximal(&l, a)?;
    Ok(l)
}

/// Checks by exhaustive search that no discriminant prime part has a nonzero
/// Q_B-isotropic vector, i.e. that L has no a-valued superlattice of prime index.
pub fn certify_maximal(l: &Lattice, a: &Ideal) -> Result<()> {
    let dm = discriminant_module(l, a)?;
    for (p, part) in &dm.parts {
        if is_isotropic_exhaustive(&part.form) {
            return Err(MaximalError::NotCertified(*p));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use latmax_core::{int, rat, FormKind, RatMatrix};
    use latmax_latticealg::{discriminant_group, is_a_valued};

    fn space(kind: FormKind, gram: Vec<Vec<i64>>) -> Arc<Space> {
        Arc::new(Space::new(kind, RatMatrix::from_i64(&gram)).unwrap())
    }

    #[test]
    fn dot_product_is_maximal() {
        let s = space(FormKind::Bilinear, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(maximal_bilinear(&s, &Ideal::one(), None).unwrap(), Lattice::standard(s));
    }

    #[test]
    fn diag22_gains_half_diagonal() {
        let s = space(FormKind::Bilinear, vec![vec![2, 0], vec![0, 2]]);
        let m = maximal_bilinear(&s, &Ideal::one(), Some(&Lattice::standard(s.clone()))).unwrap();
        let expect = Lattice::standard(s).adjoin(&[vec![rat(1, 2), rat(1, 2)]]);
        assert_eq!(m, expect);
        assert!(is_a_valued(&m, &Ideal::one()));
        assert_eq!(m.gram().det(), int(1));
    }

    #[test]
    fn diag8_stops_at_half() {
        let s = space(FormKind::Bilinear, vec![vec![8]]);
        let m = maximal_bilinear(&s, &Ideal::one(), None).unwrap();
        assert_eq!(m.basis(), &RatMatrix::from_rows(&[vec![rat(1, 2)]]));
        assert_eq!(m.gram(), RatMatrix::from_i64(&[vec![2]]));
    }

    #[test]
    fn char_two_hyperbolic_discriminant() {
        // D = F_2² with the hyperbolic form: every Q_B value vanishes but B does not,
        // so only one of the two lines can be adjoined
        let s = space(FormKind::Bilinear, vec![vec![0, 2], vec![2, 0]]);
        let m = maximal_bilinear(&s, &Ideal::one(), None).unwrap();
        assert!(is_a_valued(&m, &Ideal::one()));
        assert!(discriminant_group(&m, &Ideal::one()).unwrap().is_empty());
    }

    #[test]
    fn foreign_start_is_rejected() {
        let s = space(FormKind::Bilinear, vec![vec![1]]);
        let t = space(FormKind::Bilinear, vec![vec![2]]);
        assert_eq!(
            maximal_bilinear(&s, &Ideal::one(), Some(&Lattice::standard(t))),
            Err(MaximalError::ForeignStart)
        );
    }
}
