use latmax_ffquadric::{find_isotropic_vector, is_isotropic, linalg, witt_split, FpForm};
use proptest::prelude::*;

fn form(primes: &'static [u64], max_dim: usize) -> impl Strategy<Value = FpForm> {
    (prop::sample::select(primes), 1..=max_dim)
        .prop_flat_map(|(p, n)| (Just(p), Just(n), prop::collection::vec(0..p, n * n)))
        .prop_map(|(p, n, v)| {
            let g = (0..n).map(|i| (0..n).map(|j| v[i.min(j) * n + i.max(j)]).collect()).collect();
            FpForm::from_residues(p, g).unwrap()
        })
}

fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn span(vs: &[Vec<u64>], n: usize, p: u64) -> Vec<Vec<u64>> {
    all_vectors(p, vs.len()).iter().map(|c| linalg::combine(c, vs, n, p)).collect()
}

fn add(x: &[u64], y: &[u64], p: u64) -> Vec<u64> {
    x.iter().zip(y).map(|(a, b)| (a + b) % p).collect()
}

/// Largest dimension of a subspace on which Q_B vanishes, by depth-first search.
fn brute_witt_dim(f: &FpForm) -> usize {
    let (p, n) = (f.p(), f.dim());
    let zeros: Vec<Vec<u64>> = all_vectors(p, n).into_iter().filter(|v| !linalg::is_zero(v) && f.q(v) == 0).collect();
    fn grow(f: &FpForm, basis: &mut Vec<Vec<u64>>, zeros: &[Vec<u64>], start: usize) -> usize {
        let (p, n) = (f.p(), f.dim());
        let mut best = basis.len();
        let current = span(basis, n, p);
        for (i, z) in zeros.iter().enumerate().skip(start) {
            if current.contains(z) || !current.iter().all(|s| f.q(&add(s, z, p)) == 0) {
                continue;
            }
            basis.push(z.clone());
            best = best.max(grow(f, basis, zeros, i + 1));
            basis.pop();
        }
        best
    }
    grow(f, &mut Vec::new(), &zeros, 0)
}

fn nondegenerate(f: &FpForm) -> bool {
    !f.is_degenerate()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn q_is_semilinear_in_char_two(f in form(&[2], 4)) {
        let n = f.dim();
        let vs = all_vectors(2, n);
        for x in &vs {
            for y in &vs {
                prop_assert_eq!(f.q(&add(x, y, 2)), (f.q(x) + f.q(y)) % 2);
            }
            prop_assert_eq!(f.q(&vec![0; n]), 0);
        }
        let kernel: Vec<&Vec<u64>> = vs.iter().filter(|v| f.q(v) == 0).collect();
        let kernel_dim = kernel.len().trailing_zeros() as usize;
        prop_assert!(kernel.len().is_power_of_two());
        let image_dim = usize::from(kernel.len() < vs.len());
        prop_assert_eq!(kernel_dim + image_dim, n);
    }

    #[test]
    fn is_isotropic_matches_search(f in form(&[2, 3, 5, 7], 4)) {
        prop_assume!(nondegenerate(&f));
        let brute = all_vectors(f.p(), f.dim()).iter().any(|v| !linalg::is_zero(v) && f.q(v) == 0);
        prop_assert_eq!(is_isotropic(&f).unwrap(), brute);
    }

    #[test]
    fn witt_split_structure(f in form(&[2, 3], 4)) {
        let (p, n) = (f.p(), f.dim());
        let w = witt_split(&f);
        let mut rows = w.radical.clone();
        for (v, u) in &w.hyperbolic_pairs {
            rows.push(v.clone());
            rows.push(u.clone());
        }
        rows.extend(w.isotropic.iter().cloned());
        rows.extend(w.anisotropic.iter().cloned());
        prop_assert_eq!(rows.len(), n);
        prop_assert_eq!(linalg::rank(&rows, p), n);
        let all = all_vectors(p, n);
        for r in &w.radical {
            prop_assert!(all.iter().all(|x| f.b(r, x) == 0));
        }
        for (i, (v, u)) in w.hyperbolic_pairs.iter().enumerate() {
            prop_assert!(f.q(v) == 0 && f.q(u) == 0 && f.b(v, u) == 1);
            for (j, (v2, u2)) in w.hyperbolic_pairs.iter().enumerate() {
                if i != j {
                    prop_assert!(f.b(v, v2) == 0 && f.b(v, u2) == 0 && f.b(u, v2) == 0 && f.b(u, u2) == 0);
                }
            }
            for a in w.anisotropic.iter().chain(&w.isotropic) {
                prop_assert!(f.b(v, a) == 0 && f.b(u, a) == 0);
            }
        }
        let aniso = span(&w.anisotropic, n, p);
        prop_assert!(aniso.iter().all(|x| linalg::is_zero(x) || f.q(x) != 0));
        let m = w.maximal_isotropic();
        prop_assert!(span(&m, n, p).iter().all(|x| f.q(x) == 0));
        prop_assert_eq!(m.len(), brute_witt_dim(&f));
        if p != 2 {
            prop_assert!(w.isotropic.is_empty());
            prop_assert_eq!(m.len(), w.radical.len() + w.hyperbolic_pairs.len());
        }
    }

    #[test]
    fn find_isotropic_vector_is_isotropic(f in form(&[2, 3, 5, 7], 4), seed in any::<u64>()) {
        prop_assume!(nondegenerate(&f) && is_isotropic(&f).unwrap());
        let v = find_isotropic_vector(&f, seed).unwrap();
        prop_assert!(!linalg::is_zero(&v));
        prop_assert_eq!(f.q(&v), 0);
        prop_assert_eq!(find_isotropic_vector(&f, seed).unwrap(), v);
    }
}

fn invertible(p: u64, n: usize) -> impl Strategy<Value = Vec<Vec<u64>>> {
    prop::collection::vec(0..p, n * n)
        .prop_map(move |v| (0..n).map(|i| v[i * n..(i + 1) * n].to_vec()).collect::<Vec<Vec<u64>>>())
        .prop_filter("invertible", move |t: &Vec<Vec<u64>>| linalg::rank(t, p) == n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// Witt index is a congruence invariant.
    #[test]
    fn pair_count_is_basis_independent(
        (f, t) in form(&[3, 5, 7], 4).prop_flat_map(|f| { let (p, n) = (f.p(), f.dim()); (Just(f), invertible(p, n)) })
    ) {
        let g = f.restrict(&t);
        let (a, b) = (witt_split(&f), witt_split(&g));
        prop_assert_eq!(a.hyperbolic_pairs.len(), b.hyperbolic_pairs.len());
        prop_assert_eq!(a.radical.len(), b.radical.len());
    }
}
