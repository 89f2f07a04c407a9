//! Independent class and genus lists for positive ternary forms xᵀGx with integral G.
//!
//! Classes come from exhaustive enumeration of reduced forms (a ≤ b ≤ c, |2f|, |2e| ≤ a,
//! |2d| ≤ b, abc ≤ 2·det) identified by a canonical Gram over bases of successive-minimum
//! vectors; the number of bases attaining the canonical Gram is |Aut|. Genera are the
//! classes of 2G with isomorphic discriminant quadratic forms at every p | 8·det.
//! Pure i64 arithmetic; nothing here calls the library.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

pub type Gram = [[i64; 3]; 3];
/// (G00, G11, G22, G01, G02, G12) of the canonical basis.
pub type Canon = [i64; 6];

pub fn det3(g: &Gram) -> i64 {
    g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
}

fn ip(g: &Gram, x: &[i64; 3], y: &[i64; 3]) -> i64 {
    let mut s = 0;
    for i in 0..3 {
        for j in 0..3 {
            s += x[i] * g[i][j] * y[j];
        }
    }
    s
}

pub fn reduced_forms(d: i64) -> Vec<Gram> {
    let mut out = Vec::new();
    let mut a = 1;
    while a * a * a <= 2 * d {
        let mut b = a;
        while a * b * b <= 2 * d {
            let mut c = b;
            while a * b * c <= 2 * d {
                for f in -(a / 2)..=a / 2 {
                    for e in -(a / 2)..=a / 2 {
                        for dd in -(b / 2)..=b / 2 {
                            let g = [[a, f, e], [f, b, dd], [e, dd, c]];
                            if a * b - f * f > 0 && det3(&g) == d {
                                out.push(g);
                            }
                        }
                    }
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn vectors_upto(g: &Gram, bound: i64) -> Vec<(i64, [i64; 3])> {
    let d = det3(g);
    let adj = |i: usize| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        g[j][j] * g[k][k] - g[j][k] * g[k][j]
    };
    // x_i² ≤ bound·(G⁻¹)_ii
    let lim: Vec<i64> = (0..3).map(|i| isqrt(bound * adj(i) / d) + 1).collect();
    let mut out = Vec::new();
    for x in -lim[0]..=lim[0] {
        for y in -lim[1]..=lim[1] {
            for z in -lim[2]..=lim[2] {
                let v = [x, y, z];
                let q = ip(g, &v, &v);
                if q > 0 && q <= bound {
                    out.push((q, v));
                }
            }
        }
    }
    out.sort();
    out
}

fn det_rows(m: &[[i64; 3]; 3]) -> i64 {
    det3(m)
}

fn rank(vs: &[[i64; 3]]) -> usize {
    match vs.len() {
        0 => 0,
        1 => usize::from(vs[0] != [0, 0, 0]),
        2 => {
            let (a, b) = (vs[0], vs[1]);
            let cr = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
            if cr != [0, 0, 0] {
                2
            } else {
                rank(&vs[..1]).max(rank(&vs[1..]))
            }
        }
        _ => {
            if det_rows(&[vs[0], vs[1], vs[2]]) != 0 {
                3
            } else {
                rank(&vs[..2]).max(rank(&[vs[0], vs[2]])).max(rank(&vs[1..3]))
            }
        }
    }
}

/// Canonical Gram and the automorphism group order.
pub fn canon(g: &Gram) -> (Canon, u64) {
    // double the bound until the short vectors span; the minima are then all below it
    let mut c = 1;
    let (vs, mins) = loop {
        let vs = vectors_upto(g, c);
        let mut span: Vec<[i64; 3]> = Vec::new();
        let mut mins = Vec::new();
        for (q, v) in &vs {
            let mut t = span.clone();
            t.push(*v);
            if rank(&t) > span.len() {
                span.push(*v);
                mins.push(*q);
            }
        }
        if mins.len() == 3 {
            break (vs, mins);
        }
        c *= 2;
    };
    let of = |m: i64| vs.iter().filter(|(q, _)| *q == m).map(|(_, v)| *v).collect::<Vec<_>>();
    let (c1, c2, c3) = (of(mins[0]), of(mins[1]), of(mins[2]));
    let mut best: Option<Canon> = None;
    let mut count = 0u64;
    for x in &c1 {
        for y in &c2 {
            for z in &c3 {
                if det_rows(&[*x, *y, *z]).abs() != 1 {
                    continue;
                }
                let t = [ip(g, x, x), ip(g, y, y), ip(g, z, z), ip(g, x, y), ip(g, x, z), ip(g, y, z)];
                match best {
                    Some(b) if t > b => {}
                    Some(b) if t == b => count += 1,
                    _ => {
                        best = Some(t);
                        count = 1;
                    }
                }
            }
        }
    }
    (best.expect("a reduced basis exists"), count)
}

pub fn canon_gram(c: &Canon) -> Gram {
    [[c[0], c[3], c[4]], [c[3], c[1], c[5]], [c[4], c[5], c[2]]]
}

fn primes_of(mut n: i64) -> Vec<i64> {
    let mut ps = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            ps.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        ps.push(n);
    }
    ps
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The discriminant form of the even lattice 2G: elements k/N of N⁻¹ℤ³/ℤ³, N = |det 2G|.
struct DiscForm {
    n: i64,
    h: Gram,
    elems: Vec<[i64; 3]>,
}

impl DiscForm {
    fn new(g: &Gram) -> DiscForm {
        let mut h = *g;
        for r in h.iter_mut() {
            for x in r.iter_mut() {
                *x *= 2;
            }
        }
        let n = det3(&h).abs();
        // columns of N·H⁻¹ = ±adj(H)
        let sgn = det3(&h).signum();
        let cof = |i: usize, j: usize| {
            let rs: Vec<usize> = (0..3).filter(|&r| r != i).collect();
            let cs: Vec<usize> = (0..3).filter(|&c| c != j).collect();
            let m = h[rs[0]][cs[0]] * h[rs[1]][cs[1]] - h[rs[0]][cs[1]] * h[rs[1]][cs[0]];
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        };
        let gens: Vec<[i64; 3]> = (0..3)
            .map(|j| {
                let mut v = [0; 3];
                for (i, vi) in v.iter_mut().enumerate() {
                    // (H⁻¹)_{ij} = cof(j, i)/det
                    *vi = (sgn * cof(j, i)).rem_euclid(n);
                }
                v
            })
            .collect();
        let mut seen = HashSet::new();
        let zero = [0i64; 3];
        seen.insert(zero);
        let mut elems = vec![zero];
        let mut queue = VecDeque::from([zero]);
        while let Some(e) = queue.pop_front() {
            for gv in &gens {
                let s = [(e[0] + gv[0]) % n, (e[1] + gv[1]) % n, (e[2] + gv[2]) % n];
                if seen.insert(s) {
                    elems.push(s);
                    queue.push_back(s);
                }
            }
        }
        assert_eq!(elems.len() as i64, n);
        DiscForm { n, h, elems }
    }

    fn add(&self, a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
        [(a[0] + b[0]) % self.n, (a[1] + b[1]) % self.n, (a[2] + b[2]) % self.n]
    }

    /// kᵀHk mod 2N², i.e. q(k/N) ∈ ℚ/2ℤ scaled by N².
    fn q(&self, k: &[i64; 3]) -> i64 {
        let n2 = self.n * self.n;
        (ip(&self.h, k, k)).rem_euclid(2 * n2)
    }

    fn order(&self, k: &[i64; 3]) -> i64 {
        self.n / gcd(gcd(gcd(self.n, k[0]), k[1]), k[2])
    }

    fn p_part(&self, p: i64) -> Vec<[i64; 3]> {
        self.elems
            .iter()
            .filter(|k| {
                let mut o = self.order(k);
                while o % p == 0 {
                    o /= p;
                }
                o == 1
            })
            .copied()
            .collect()
    }
}

fn span(df: &DiscForm, gens: &[[i64; 3]]) -> HashMap<[i64; 3], Vec<i64>> {
    // element → coefficients on gens
    let mut out: HashMap<[i64; 3], Vec<i64>> = HashMap::new();
    out.insert([0; 3], vec![0; gens.len()]);
    let mut queue = VecDeque::from([[0i64; 3]]);
    while let Some(e) = queue.pop_front() {
        let c = out[&e].clone();
        for (i, g) in gens.iter().enumerate() {
            let s = df.add(&e, g);
            if !out.contains_key(&s) {
                let mut c2 = c.clone();
                c2[i] += 1;
                out.insert(s, c2);
                queue.push_back(s);
            }
        }
    }
    out
}

fn scaled_q(df: &DiscForm, k: &[i64; 3], n: i64) -> (i64, i64) {
    // q as a reduced fraction, to compare forms with different N
    let num = df.q(k);
    let den = df.n * df.n;
    let g = gcd(num, den);
    let _ = n;
    (num / g, den / g)
}

/// Whether the p-parts of the discriminant forms of 2G₁ and 2G₂ are isometric.
fn iso_p(g1: &Gram, g2: &Gram, p: i64) -> bool {
    let d1 = DiscForm::new(g1);
    let d2 = DiscForm::new(g2);
    let p1 = d1.p_part(p);
    let p2 = d2.p_part(p);
    if p1.len() != p2.len() {
        return false;
    }
    let mut gens: Vec<[i64; 3]> = Vec::new();
    let mut sp = span(&d1, &gens);
    while sp.len() < p1.len() {
        let v = *p1
            .iter()
            .filter(|k| !sp.contains_key(*k))
            .max_by_key(|k| (d1.order(k), std::cmp::Reverse(**k)))
            .expect("span is proper");
        gens.push(v);
        sp = span(&d1, &gens);
    }
    let qv1: HashMap<[i64; 3], (i64, i64)> = p1.iter().map(|k| (*k, scaled_q(&d1, k, 0))).collect();
    let qv2: HashMap<[i64; 3], (i64, i64)> = p2.iter().map(|k| (*k, scaled_q(&d2, k, 0))).collect();
    let mut imgs: Vec<[i64; 3]> = Vec::new();
    fn rec(
        i: usize,
        gens: &[[i64; 3]],
        imgs: &mut Vec<[i64; 3]>,
        d1: &DiscForm,
        d2: &DiscForm,
        p2: &[[i64; 3]],
        sp: &HashMap<[i64; 3], Vec<i64>>,
        qv1: &HashMap<[i64; 3], (i64, i64)>,
        qv2: &HashMap<[i64; 3], (i64, i64)>,
    ) -> bool {
        if i == gens.len() {
            return check(gens, imgs, d1, d2, sp, qv1, qv2);
        }
        for w in p2 {
            if d2.order(w) != d1.order(&gens[i]) || qv2[w] != qv1[&gens[i]] {
                continue;
            }
            imgs.push(*w);
            if rec(i + 1, gens, imgs, d1, d2, p2, sp, qv1, qv2) {
                return true;
            }
            imgs.pop();
        }
        false
    }
    rec(0, &gens, &mut imgs, &d1, &d2, &p2, &sp, &qv1, &qv2)
}

/// The generator assignment extends to a well-defined bijective q-preserving map.
fn check(
    gens: &[[i64; 3]],
    imgs: &[[i64; 3]],
    d1: &DiscForm,
    d2: &DiscForm,
    sp: &HashMap<[i64; 3], Vec<i64>>,
    qv1: &HashMap<[i64; 3], (i64, i64)>,
    qv2: &HashMap<[i64; 3], (i64, i64)>,
) -> bool {
    let phi = |coeffs: &[i64]| -> [i64; 3] {
        let mut acc = [0i64; 3];
        for (c, w) in coeffs.iter().zip(imgs) {
            for _ in 0..*c {
                acc = d2.add(&acc, w);
            }
        }
        acc
    };
    let map: HashMap<[i64; 3], [i64; 3]> = sp.iter().map(|(k, c)| (*k, phi(c))).collect();
    let image: HashSet<[i64; 3]> = map.values().copied().collect();
    if image.len() != map.len() {
        return false;
    }
    for (x, fx) in &map {
        if qv1[x] != qv2[fx] {
            return false;
        }
        for (g, w) in gens.iter().zip(imgs) {
            if map[&d1.add(x, g)] != d2.add(fx, w) {
                return false;
            }
        }
    }
    true
}

pub fn same_genus(g1: &Gram, g2: &Gram) -> bool {
    let d = det3(g1);
    d == det3(g2) && primes_of(8 * d).into_iter().all(|p| iso_p(g1, g2, p))
}

/// One genus: its classes as canonical Grams with |Aut|.
#[derive(Clone, Debug)]
pub struct OracleGenus {
    pub det: i64,
    pub classes: BTreeMap<Canon, u64>,
}

pub fn genera_of_det(d: i64) -> Vec<OracleGenus> {
    let mut classes: BTreeMap<Canon, u64> = BTreeMap::new();
    for g in reduced_forms(d) {
        let (c, aut) = canon(&g);
        classes.insert(c, aut);
    }
    let mut genera: Vec<OracleGenus> = Vec::new();
    for (c, aut) in classes {
        let g = canon_gram(&c);
        match genera.iter_mut().find(|gen| same_genus(&canon_gram(gen.classes.keys().next().expect("nonempty")), &g)) {
            Some(gen) => {
                gen.classes.insert(c, aut);
            }
            None => genera.push(OracleGenus { det: d, classes: BTreeMap::from([(c, aut)]) }),
        }
    }
    genera
}
