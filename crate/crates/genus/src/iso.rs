//! Isometry tests and automorphism group orders by backtracking over short vectors.
//!
//! A form is LLL-reduced and scaled to a primitive integral Gram matrix first. Images of
//! the reduced basis are chosen among vectors of matching norm, pruned by inner products
//! with the images already fixed. A complete assignment is an isometry onto a sublattice
//! of the same determinant, so it is onto.

use std::collections::{BTreeMap, HashSet};

use latmax_core::num_traits::{One, ToPrimitive, Zero};
use latmax_core::{rat_gcd, BigInt, Lattice, RatMatrix, Rational};

use crate::reduce::{enumerate, lll};
use crate::{GenusError, Result};

#[derive(Clone, Debug)]
pub(crate) struct Form {
    pub gram: Vec<Vec<i64>>,
    /// form_gram of the reduced basis = content · gram.
    pub content: Rational,
    /// Reduced basis in coordinates of the canonical basis.
    pub transform: Vec<Vec<BigInt>>,
}

impl Form {
    pub fn from_lattice(l: &Lattice) -> Result<Form> {
        Form::from_gram(&l.form_gram())
    }

    pub fn from_gram(q: &RatMatrix) -> Result<Form> {
        let rows = q.row_vecs();
        let red = lll(&rows)?;
        let content = red.gram.iter().flatten().fold(Rational::zero(), |acc, x| rat_gcd(&acc, x));
        let gram = red
            .gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x / &content).to_integer().to_i64().ok_or(GenusError::EntryTooLarge))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Form { gram, content, transform: red.transform })
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn max_diag(&self) -> i64 {
        (0..self.dim()).map(|i| self.gram[i][i]).max().unwrap_or(0)
    }

    pub fn det(&self) -> BigInt {
        RatMatrix::from_i64(&self.gram).det().to_integer()
    }

    fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.gram.iter().map(|r| dot(r, v)).collect()
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Every nonzero vector with norm ≤ bound, grouped by norm.
#[derive(Clone, Debug)]
pub(crate) struct VectorSet {
    pub bound: i64,
    pub by_norm: BTreeMap<i64, Vec<Vec<i64>>>,
}

impl VectorSet {
    pub fn new(f: &Form, bound: i64) -> VectorSet {
        let g: Vec<Vec<Rational>> =
            f.gram.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        let mut by_norm: BTreeMap<i64, Vec<Vec<i64>>> = BTreeMap::new();
        for (v, q) in enumerate(&g, &Rational::from_integer(bound.into())) {
            by_norm.entry(q.to_integer().to_i64().expect("small norm")).or_default().push(v);
        }
        VectorSet { bound, by_norm }
    }

    /// Number of vectors of each norm up to `bound` (which must not exceed self.bound).
    pub fn theta(&self, bound: i64) -> Vec<(i64, usize)> {
        debug_assert!(bound <= self.bound);
        self.by_norm.range(..=bound).map(|(&q, vs)| (q, vs.len())).collect()
    }

    fn of_norm(&self, q: i64) -> &[Vec<i64>] {
        self.by_norm.get(&q).map_or(&[], Vec::as_slice)
    }
}

/// Extends `imgs` (images of the first basis vectors of `src`) to a full isometry
/// src → tgt, returning the image rows.
fn extend(src: &Form, tgt: &Form, cands: &[&[Vec<i64>]], imgs: &mut Vec<Vec<i64>>, gimgs: &mut Vec<Vec<i64>>) -> bool {
    let k = imgs.len();
    if k == src.dim() {
        return true;
    }
    for c in cands[k] {
        if (0..k).all(|i| dot(c, &gimgs[i]) == src.gram[k][i]) {
            gimgs.push(tgt.apply(c));
            imgs.push(c.clone());
            if extend(src, tgt, cands, imgs, gimgs) {
                return true;
            }
            imgs.pop();
            gimgs.pop();
        }
    }
    false
}

fn candidates<'a>(src: &Form, vs: &'a VectorSet) -> Vec<&'a [Vec<i64>]> {
    (0..src.dim()).map(|i| vs.of_norm(src.gram[i][i])).collect()
}

/// Image rows W with W·tgt·Wᵀ = src, if one exists. `vs` must reach src.max_diag().
pub(crate) fn find_isometry(src: &Form, tgt: &Form, vs: &VectorSet) -> Option<Vec<Vec<i64>>> {
    if src.dim() != tgt.dim() || src.content != tgt.content {
        return None;
    }
    debug_assert!(vs.bound >= src.max_diag());
    let cands = candidates(src, vs);
    let mut imgs = Vec::new();
    let mut gimgs = Vec::new();
    extend(src, tgt, &cands, &mut imgs, &mut gimgs).then_some(imgs)
}

fn image(v: &[i64], sigma: &[Vec<i64>]) -> Vec<i64> {
    let n = v.len();
    (0..n).map(|j| (0..n).map(|i| v[i] * sigma[i][j]).sum()).collect()
}

/// |Aut| as a product of orbit lengths along the chain of pointwise stabilizers of
/// the basis vectors. Orbit membership is decided by an extension search, with orbits
/// closed under the automorphisms found so far to skip most searches.
pub(crate) fn aut_order_form(f: &Form, vs: &VectorSet) -> BigInt {
    let n = f.dim();
    let cands = candidates(f, vs);
    let basis: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut order = BigInt::one();
    for k in 0..n {
        let prefix: Vec<Vec<i64>> = basis[..k].to_vec();
        let gprefix: Vec<Vec<i64>> = prefix.iter().map(|v| f.apply(v)).collect();
        let level: Vec<&Vec<i64>> =
            cands[k].iter().filter(|c| (0..k).all(|i| dot(c, &gprefix[i]) == f.gram[k][i])).collect();
        let mut orbit: HashSet<Vec<i64>> = HashSet::new();
        orbit.insert(basis[k].clone());
        let mut gens: Vec<Vec<Vec<i64>>> = Vec::new();
        for w in level {
            if orbit.contains(w) {
                continue;
            }
            let mut imgs = prefix.clone();
            let mut gimgs = gprefix.clone();
            imgs.push(w.clone());
            gimgs.push(f.apply(w));
            if !extend(f, f, &cands, &mut imgs, &mut gimgs) {
                continue;
            }
            gens.push(imgs);
            let mut frontier: Vec<Vec<i64>> = orbit.iter().cloned().collect();
            frontier.sort();
            while let Some(x) = frontier.pop() {
                for s in &gens {
                    let y = image(&x, s);
                    if orbit.insert(y.clone()) {
                        frontier.push(y);
                    }
                }
            }
        }
        order *= BigInt::from(orbit.len());
    }
    order
}

/// A witness for L₁ ≅ L₂: `images` are the images of L₁'s canonical basis, as
/// ambient vectors in L₂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    pub images: RatMatrix,
}

fn to_rat(m: &[Vec<BigInt>]) -> RatMatrix {
    RatMatrix::from_rows(&m.iter().map(|r| r.iter().cloned().map(Rational::from_integer).collect()).collect::<Vec<_>>())
}

pub fn is_isometric(l1: &Lattice, l2: &Lattice) -> Result<Option<Isometry>> {
    if l1.dim() != l2.dim() {
        return Ok(None);
    }
    let f1 = Form::from_lattice(l1)?;
    let f2 = Form::from_lattice(l2)?;
    if f1.content != f2.content || f1.det() != f2.det() {
        return Ok(None);
    }
    let bound = f1.max_diag().max(f2.max_diag());
    let v1 = VectorSet::new(&f1, bound);
    let v2 = VectorSet::new(&f2, bound);
    if v1.theta(bound) != v2.theta(bound) {
        return Ok(None);
    }
    let Some(w) = find_isometry(&f1, &f2, &v2) else {
        return Ok(None);
    };
    // images of the canonical basis of L₁: T₁⁻¹·W·T₂·M₂
    let wm = RatMatrix::from_i64(&w);
    let t1inv = to_rat(&f1.transform).inverse()?;
    let images = t1inv.mul(&wm).mul(&to_rat(&f2.transform)).mul(l2.basis());
    Ok(Some(Isometry { images }))
}

pub fn aut_order(l: &Lattice) -> Result<BigInt> {
    let f = Form::from_lattice(l)?;
    let vs = VectorSet::new(&f, f.max_diag());
    Ok(aut_order_form(&f, &vs))
}

/// All v ∈ L with 0 < Q(v) ≤ bound, as ambient vectors with their values, sorted by value.
pub fn short_vectors(l: &Lattice, bound: &Rational) -> Result<Vec<(Vec<Rational>, Rational)>> {
    let rows = l.form_gram().row_vecs();
    let red = lll(&rows)?;
    let basis = to_rat(&red.transform).mul(l.basis());
    Ok(enumerate(&red.gram, bound)
        .into_iter()
        .map(|(x, q)| {
            let c: Vec<Rational> = x.iter().map(|&v| Rational::from_integer(v.into())).collect();
            (basis.left_mul_vec(&c), q)
        })
        .collect())
}
