mod support;

use std::collections::BTreeSet;
use std::sync::Arc;

use latmax_core::num_traits::ToPrimitive;
use latmax_core::{BigInt, Ideal, IntMatrix, Lattice, RatMatrix, Space};
use latmax_genus::{aut_order, enumerate_genus, is_isometric, GenusOptions};
use proptest::prelude::*;
use support::ternary_oracle::{canon, reduced_forms, same_genus, Canon, Gram};

fn lattice_of(g: &Gram) -> Lattice {
    let rows: Vec<Vec<i64>> = g.iter().map(|r| r.to_vec()).collect();
    Lattice::standard(Arc::new(Space::quadratic(RatMatrix::from_i64(&rows)).unwrap()))
}

fn gram_of(l: &Lattice) -> Gram {
    let f = l.form_gram();
    let mut g = [[0i64; 3]; 3];
    for (i, row) in g.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = f.get(i, j).to_integer().to_i64().unwrap();
        }
    }
    g
}

fn ternary() -> impl Strategy<Value = Gram> {
    (1i64..=40).prop_flat_map(|d| prop::sample::select(reduced_forms(d)))
}

fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut u = IntMatrix::identity(n);
        for (i, j, f) in ops {
            if i != j {
                u.add_row_multiple(i, j, &BigInt::from(f));
            }
        }
        u
    })
}

fn rebase(l: &Lattice, t: &IntMatrix) -> Lattice {
    Lattice::new(l.space().clone(), t.to_rational().mul(l.basis())).unwrap()
}

fn canon_set(classes: &[Lattice]) -> BTreeSet<Canon> {
    classes.iter().map(|c| canon(&gram_of(c)).0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn aut_order_is_basis_free(g in ternary(), ts in prop::collection::vec(unimodular(3), 50)) {
        let l = lattice_of(&g);
        let aut = aut_order(&l).unwrap();
        prop_assert_eq!(aut.clone(), BigInt::from(canon(&g).1));
        for t in &ts {
            // the canonical basis absorbs the change, so rebase the Gram instead
            let tr = t.to_rational();
            let rebased = lattice_of(&gram_of(&Lattice::standard(Arc::new(
                Space::quadratic(tr.mul(l.space().gram()).mul(&tr.transpose())).unwrap(),
            ))));
            prop_assert_eq!(aut_order(&rebased).unwrap(), aut.clone());
        }
    }

    #[test]
    fn genus_runs_are_consistent(g in ternary(), t in unimodular(3)) {
        let l = lattice_of(&g);
        let a = Ideal::one();
        let run = enumerate_genus(&l, &a, &GenusOptions::default()).unwrap();
        prop_assert!(run.complete);
        prop_assert_eq!(run.partial_mass.clone(), run.target_mass.clone());
        let classes: Vec<Lattice> = run.classes.iter().map(|c| c.lattice.clone()).collect();
        for (i, c) in classes.iter().enumerate() {
            prop_assert!(same_genus(&g, &gram_of(c)));
            for d in &classes[i + 1..] {
                prop_assert!(is_isometric(c, d).unwrap().is_none());
            }
        }
        // restarting from the last class in a different basis finds the same classes
        let other = rebase(classes.last().unwrap(), &t);
        let again = enumerate_genus(&other, &a, &GenusOptions::default()).unwrap();
        prop_assert!(again.complete);
        let again: Vec<Lattice> = again.classes.into_iter().map(|c| c.lattice).collect();
        prop_assert_eq!(canon_set(&again), canon_set(&classes));
    }
}
