use latmax_core::num_traits::{One, Zero};
use latmax_core::{ord_p, Lattice, RatMatrix, Rational};

/// One Jordan constituent piece: `gram` is p^scale times a p-adic unit form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanBlock {
    pub scale: i64,
    /// Rows in ambient coordinates (p-integral combinations of the lattice basis).
    pub basis: RatMatrix,
    pub gram: RatMatrix,
}

impl JordanBlock {
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    pub prime: u64,
    pub blocks: Vec<JordanBlock>,
}

impl JordanDecomposition {
    /// Distinct scales with the total dimension at each, ascending.
    pub fn scale_dims(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for b in &self.blocks {
            match out.last_mut() {
                Some((s, d)) if *s == b.scale => *d += b.dim(),
                _ => out.push((b.scale, b.dim())),
            }
        }
        out
    }

    pub fn max_scale(&self) -> Option<i64> {
        self.blocks.iter().map(|b| b.scale).max()
    }

    pub fn min_scale(&self) -> Option<i64> {
        self.blocks.iter().map(|b| b.scale).min()
    }
}

fn val(x: &Rational, p: u64) -> i64 {
    ord_p(x, p).unwrap_or(i64::MAX)
}

/// p-adic splitting of a symmetric Gram matrix. Returns (scale, transform rows, block gram)
/// where the transform rows are coordinates in the original basis.
pub fn jordan_gram(gram: &RatMatrix, p: u64) -> Vec<(i64, Vec<Vec<Rational>>, RatMatrix)> {
    let n = gram.rows();
    let mut m: Vec<Vec<Rational>> = gram.row_vecs();
    let mut t: Vec<Vec<Rational>> = RatMatrix::identity(n).row_vecs();
    let mut active: Vec<usize> = (0..n).collect();
    let mut blocks = Vec::new();

    // e_dst -= c·e_src, applied to the Gram (rows and columns) and the transform
    let sub = |m: &mut Vec<Vec<Rational>>, t: &mut Vec<Vec<Rational>>, dst: usize, src: usize, c: &Rational| {
        if c.is_zero() {
            return;
        }
        for k in 0..n {
            let x = &m[src][k] * c;
            m[dst][k] -= x;
        }
        for k in 0..n {
            let x = &m[k][src] * c;
            m[k][dst] -= x;
        }
        for k in 0..n {
            let x = &t[src][k] * c;
            t[dst][k] -= x;
        }
    };

    while !active.is_empty() {
        let best = active
            .iter()
            .flat_map(|&i| active.iter().map(move |&j| (i, j)))
            .map(|(i, j)| val(&m[i][j], p))
            .min()
            .expect("non-empty");
        if let Some(&k) = active.iter().find(|&&i| val(&m[i][i], p) == best) {
            let piv = m[k][k].clone();
            for &j in active.iter().filter(|&&j| j != k) {
                let c = &m[j][k] / &piv;
                sub(&mut m, &mut t, j, k, &c);
            }
            blocks.push((best, vec![t[k].clone()], RatMatrix::from_rows(&[vec![m[k][k].clone()]])));
            active.retain(|&x| x != k);
            continue;
        }
        let (i, j) = active
            .iter()
            .flat_map(|&i| active.iter().filter(move |&&j| j > i).map(move |&j| (i, j)))
            .find(|&(i, j)| val(&m[i][j], p) == best)
            .expect("minimum attained off the diagonal");
        if p != 2 {
            // e_i += e_j makes the (i,i) entry attain the minimal valuation
            sub(&mut m, &mut t, i, j, &(-Rational::one()));
            continue;
        }
        let (a, b, c) = (m[i][i].clone(), m[i][j].clone(), m[j][j].clone());
        let det = &a * &c - &b * &b;
        let inv = [[&c / &det, -(&b / &det)], [-(&b / &det), &a / &det]];
        for &k in active.iter().filter(|&&k| k != i && k != j) {
            let (x, y) = (m[k][i].clone(), m[k][j].clone());
            let ci = &x * &inv[0][0] + &y * &inv[1][0];
            let cj = &x * &inv[0][1] + &y * &inv[1][1];
            sub(&mut m, &mut t, k, i, &ci);
            sub(&mut m, &mut t, k, j, &cj);
        }
        let g = RatMatrix::from_rows(&[
            vec![m[i][i].clone(), m[i][j].clone()],
            vec![m[j][i].clone(), m[j][j].clone()],
        ]);
        blocks.push((best, vec![t[i].clone(), t[j].clone()], g));
        active.retain(|&x| x != i && x != j);
    }
    blocks.sort_by_key(|b| b.0);
    blocks
}

/// Jordan decomposition of L at p with respect to its duality form.
pub fn jordan_decomposition(l: &Lattice, p: u64) -> JordanDecomposition {
    let blocks = jordan_gram(&l.gram(), p)
        .into_iter()
        .map(|(scale, rows, gram)| JordanBlock {
            scale,
            basis: RatMatrix::from_rows(&rows).mul(l.basis()),
            gram,
        })
        .collect();
    JordanDecomposition { prime: p, blocks }
}
