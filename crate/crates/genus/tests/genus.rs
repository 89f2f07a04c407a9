use std::sync::Arc;
use std::time::Instant;

use latmax_core::{int, rat, BigInt, FormKind, Ideal, Lattice, RatMatrix, Space};
use latmax_genus::{aut_order, enumerate_genus, is_isometric, short_vectors, siegel_mass, GenusError, GenusOptions};
use latmax_maximal::maximal_quadratic;

fn qlat(gram: RatMatrix) -> Lattice {
    Lattice::standard(Arc::new(Space::new(FormKind::Quadratic, gram).unwrap()))
}

fn e8() -> Lattice {
    let s = Arc::new(Space::quadratic(RatMatrix::identity(8)).unwrap());
    maximal_quadratic(&s, &Ideal::from_i64(2), None).unwrap()
}

#[test]
fn cube_genus() {
    let run = enumerate_genus(&qlat(RatMatrix::identity(3)), &Ideal::one(), &GenusOptions::default()).unwrap();
    assert!(run.complete);
    assert_eq!(run.classes.len(), 1);
    assert_eq!(run.partial_mass, rat(1, 48));
    assert_eq!(run.primes_used, vec![3]);
}

#[test]
fn e8_lattice() {
    let t = Instant::now();
    let l = e8();
    let sv = short_vectors(&l, &int(2)).unwrap();
    assert_eq!(sv.len(), 240);
    assert!(sv.iter().all(|(_, q)| *q == int(2)));
    assert_eq!(aut_order(&l).unwrap(), BigInt::from(696729600u64));
    assert_eq!(siegel_mass(&l).unwrap(), rat(1, 696729600));
    eprintln!("e8 aut in {:?}", t.elapsed());
    let run = enumerate_genus(&l, &Ideal::from_i64(2), &GenusOptions::default()).unwrap();
    eprintln!("e8 genus in {:?}", t.elapsed());
    assert!(run.complete);
    assert_eq!(run.classes.len(), 1);
    assert_eq!(run.partial_mass, rat(1, 696729600));
}

#[test]
fn neighbor_of_cube_is_isometric() {
    let l = qlat(RatMatrix::identity(3));
    let n = latmax_neighbor::p_neighbor(&l, 3, &Ideal::one(), &[1, 1, 1]).unwrap();
    assert!(is_isometric(&l, &n).unwrap().is_some());
}

#[test]
fn rank_two_is_rejected() {
    let r = enumerate_genus(&qlat(RatMatrix::identity(2)), &Ideal::one(), &GenusOptions::default());
    assert_eq!(r, Err(GenusError::RankTooSmall(2)));
}
