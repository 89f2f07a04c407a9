use crate::field::{add, mul, sub};
use crate::form::FpForm;
use crate::isotropy::{find_isotropic_vector, hyperbolic_complement, is_isotropic};
use crate::linalg;

/// Odd p: V = R ⊥ H ⊥ A with H a sum of hyperbolic pairs and A anisotropic.
/// p = 2: V = R ⊥ (I ⊕ A) with Q_B(I) = 0 and dim A ≤ 1 (no pairs are produced).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittSplit {
    pub p: u64,
    pub radical: Vec<Vec<u64>>,
    pub hyperbolic_pairs: Vec<(Vec<u64>, Vec<u64>)>,
    pub isotropic: Vec<Vec<u64>>,
    pub anisotropic: Vec<Vec<u64>>,
}

impl WittSplit {
    /// R + (one Lagrangian of H) for odd p, R + I for p = 2.
    pub fn maximal_isotropic(&self) -> Vec<Vec<u64>> {
        let mut m = self.radical.clone();
        m.extend(self.hyperbolic_pairs.iter().map(|(v, _)| v.clone()));
        m.extend(self.isotropic.iter().cloned());
        m
    }
}

pub fn witt_split(f: &FpForm) -> WittSplit {
    witt_split_seeded(f, 0)
}

pub fn witt_split_seeded(f: &FpForm, seed: u64) -> WittSplit {
    let rad = f.radical();
    if f.p() == 2 {
        split_char2(f, rad.basis, rad.complement)
    } else {
        split_odd(f, rad.basis, rad.complement, seed)
    }
}

fn split_odd(f: &FpForm, radical: Vec<Vec<u64>>, mut rest: Vec<Vec<u64>>, seed: u64) -> WittSplit {
    let (p, n) = (f.p(), f.dim());
    let mut pairs = Vec::new();
    let mut round = 0u64;
    loop {
        let g = f.restrict(&rest);
        if !is_isotropic(&g).expect("complement of the radical is non-degenerate") {
            break;
        }
        let u = find_isotropic_vector(&g, seed.wrapping_add(round)).expect("isotropic");
        let wu = hyperbolic_complement(&g, &u).expect("odd p");
        let v = linalg::combine(&u, &rest, n, p);
        let w = linalg::combine(&wu, &rest, n, p);
        // project the remaining space onto span{v, w}^⊥
        let proj: Vec<Vec<u64>> = rest
            .iter()
            .map(|x| {
                let (bw, bv) = (f.b(x, &w), f.b(x, &v));
                (0..n).map(|j| sub(sub(x[j], mul(bw, v[j], p), p), mul(bv, w[j], p), p)).collect()
            })
            .collect();
        rest = linalg::rref(&proj, p).0;
        pairs.push((v, w));
        round += 1;
    }
    WittSplit { p, radical, hyperbolic_pairs: pairs, isotropic: Vec::new(), anisotropic: rest }
}

fn split_char2(f: &FpForm, radical: Vec<Vec<u64>>, mut vs: Vec<Vec<u64>>) -> WittSplit {
    let n = f.dim();
    let pos = (0..vs.len()).find(|&i| f.q(&vs[i]) != 0);
    let anisotropic = match pos {
        None => Vec::new(),
        Some(i) => {
            let vn = vs.remove(i);
            // Q_B(vn) = 1, and square roots in F_2 are trivial
            for v in vs.iter_mut() {
                if f.q(v) != 0 {
                    for j in 0..n {
                        v[j] = add(v[j], vn[j], 2);
                    }
                }
            }
            vec![vn]
        }
    };
    WittSplit { p: 2, radical, hyperbolic_pairs: Vec::new(), isotropic: vs, anisotropic }
}
