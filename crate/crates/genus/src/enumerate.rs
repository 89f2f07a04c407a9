use std::collections::HashSet;

use latmax_core::num_traits::{One, Zero};
use latmax_core::primes::next_prime;
use latmax_core::{format_rational, BigInt, FormKind, Ideal, Lattice, Rational};
use latmax_latticealg::discriminant_order;
use latmax_neighbor::residual_quadric;
use rayon::prelude::*;

use crate::iso::{aut_order_form, find_isometry, Form, VectorSet};
use crate::mass::siegel_mass;
use crate::reduce::is_positive_definite;
use crate::{GenusError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MassSource {
    Computed,
    Supplied,
}

#[derive(Clone, Debug)]
pub struct GenusOptions {
    /// Use this mass instead of the mass formula.
    pub mass: Option<Rational>,
    pub jobs: usize,
    /// Give up (with `complete = false`) after this many primes.
    pub max_primes: usize,
    pub max_points: u64,
}

impl Default for GenusOptions {
    fn default() -> Self {
        GenusOptions { mass: None, jobs: 1, max_primes: 6, max_points: latmax_ffquadric::default_max_points() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusClass {
    pub lattice: Lattice,
    pub aut_order: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusRun {
    /// Sorted by canonical basis.
    pub classes: Vec<GenusClass>,
    pub partial_mass: Rational,
    pub target_mass: Rational,
    pub mass_source: MassSource,
    pub primes_used: Vec<u64>,
    pub complete: bool,
}

struct Entry {
    lattice: Lattice,
    form: Form,
    theta: Vec<(i64, usize)>,
    aut: BigInt,
}

/// A neighbor with the data needed to compare it against known classes.
struct Candidate {
    lattice: Lattice,
    form: Form,
    vectors: VectorSet,
    theta: Vec<(i64, usize)>,
}

struct Registry {
    entries: Vec<Entry>,
    seen: HashSet<Lattice>,
    theta_bound: i64,
    partial: Rational,
    target: Rational,
}

impl Registry {
    fn candidate(&self, l: Lattice, bound: i64) -> Result<Candidate> {
        let form = Form::from_lattice(&l)?;
        let vectors = VectorSet::new(&form, bound.max(self.theta_bound));
        let theta = vectors.theta(self.theta_bound);
        Ok(Candidate { lattice: l, form, vectors, theta })
    }

    fn matches(&self, c: &Candidate, e: &Entry) -> bool {
        if c.theta != e.theta || c.form.content != e.form.content {
            return false;
        }
        // map the class basis into the candidate's vectors
        if c.vectors.bound >= e.form.max_diag() {
            find_isometry(&e.form, &c.form, &c.vectors).is_some()
        } else {
            let vs = VectorSet::new(&c.form, e.form.max_diag());
            find_isometry(&e.form, &c.form, &vs).is_some()
        }
    }

    fn known(&self, c: &Candidate, upto: usize) -> bool {
        self.seen.contains(&c.lattice) || self.entries[..upto].iter().any(|e| self.matches(c, e))
    }

    /// Adds a new class; true once the target mass is reached.
    fn add(&mut self, c: Candidate) -> Result<bool> {
        let vectors = if c.vectors.bound >= c.form.max_diag() {
            c.vectors
        } else {
            VectorSet::new(&c.form, c.form.max_diag().max(self.theta_bound))
        };
        let aut = aut_order_form(&c.form, &vectors);
        self.partial += Rational::new(BigInt::one(), aut.clone());
        self.seen.insert(c.lattice.clone());
        self.entries.push(Entry { lattice: c.lattice, form: c.form, theta: c.theta, aut });
        if self.partial > self.target {
            return Err(GenusError::MassExceeded {
                partial: format_rational(&self.partial),
                target: format_rational(&self.target),
            });
        }
        Ok(self.partial == self.target)
    }

    fn max_diag(&self) -> i64 {
        self.entries.iter().map(|e| e.form.max_diag()).max().unwrap_or(0)
    }

    /// Closes the class set under p-neighbors. Neighbors of one class are built and
    /// compared with the classes known before the batch in parallel; the remaining
    /// comparisons and all insertions run in point order, so the result does not depend
    /// on scheduling. Returns true if the target mass was reached.
    fn close(&mut self, p: u64, a: &Ideal, max_points: u64) -> Result<bool> {
        let mut next = 0;
        while next < self.entries.len() {
            let l = self.entries[next].lattice.clone();
            next += 1;
            let rq = residual_quadric(&l, p, a)?;
            let points = rq.nonsingular_points(max_points)?;
            let snapshot = self.entries.len();
            let bound = self.max_diag();
            let batch: Vec<(Candidate, bool)> = points
                .par_iter()
                .map(|pt| {
                    let nb = rq.neighbor(pt)?;
                    let cand = self.candidate(nb, bound)?;
                    let known = self.known(&cand, snapshot);
                    Ok((cand, known))
                })
                .collect::<Result<Vec<_>>>()?;
            for (cand, known) in batch {
                if known || self.seen.contains(&cand.lattice) {
                    continue;
                }
                if self.entries[snapshot..].iter().any(|e| self.matches(&cand, e)) {
                    continue;
                }
                if self.add(cand)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// All classes in the genus of a positive definite quadratic lattice with Q(L) ⊆ a.
///
/// Primes p ∤ disc(L) are used in increasing order; at each the class set is closed
/// under p-neighbors, and the run stops as soon as the partial mass Σ 1/|Aut| equals
/// the target mass. A run that exhausts `max_primes` first is returned with
/// `complete = false`.
pub fn enumerate_genus(l: &Lattice, a: &Ideal, opts: &GenusOptions) -> Result<GenusRun> {
    if l.kind() != FormKind::Quadratic {
        return Err(GenusError::NotQuadratic);
    }
    if l.dim() < 3 {
        return Err(GenusError::RankTooSmall(l.dim()));
    }
    if !is_positive_definite(&l.form_gram().row_vecs()) {
        return Err(GenusError::NotPositiveDefinite);
    }
    let (target, mass_source) = match &opts.mass {
        Some(m) => (m.clone(), MassSource::Supplied),
        None => (siegel_mass(l)?, MassSource::Computed),
    };
    if target <= Rational::zero() {
        return Err(GenusError::BadMass(format_rational(&target)));
    }
    let disc = discriminant_order(l, a)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| GenusError::ThreadPool(e.to_string()))?;
    pool.install(|| {
        let seed_form = Form::from_lattice(l)?;
        let theta_bound = seed_form.max_diag();
        let mut reg = Registry {
            entries: Vec::new(),
            seen: HashSet::new(),
            theta_bound,
            partial: Rational::zero(),
            target: target.clone(),
        };
        let c = reg.candidate(l.clone(), theta_bound)?;
        let mut done = reg.add(c)?;
        let mut primes_used = Vec::new();
        let mut p = 2;
        while primes_used.len() < opts.max_primes {
            if (&disc % BigInt::from(p)).is_zero() {
                p = next_prime(p);
                continue;
            }
            done = reg.close(p, a, opts.max_points)? || reg.partial == reg.target;
            primes_used.push(p);
            if done {
                break;
            }
            p = next_prime(p);
        }
        let mut classes: Vec<GenusClass> =
            reg.entries.into_iter().map(|e| GenusClass { lattice: e.lattice, aut_order: e.aut }).collect();
        classes.sort_by(|x, y| x.lattice.cmp(&y.lattice));
        Ok(GenusRun {
            classes,
            partial_mass: reg.partial,
            target_mass: target.clone(),
            mass_source: mass_source.clone(),
            primes_used,
            complete: done,
        })
    })
}
