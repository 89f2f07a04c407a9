use std::path::Path;
use std::sync::Arc;

use latmax_core::primes::is_prime;
use latmax_core::{BigInt, FormKind, Ideal, Lattice, Rational, Space};
use latmax_genus::{aut_order, enumerate_genus, is_isometric, siegel_mass, GenusOptions, MassSource};
use latmax_latticealg::{
    discriminant_group, discriminant_module, dual, jordan_decomposition, saturate, LatError,
};
use latmax_maximal::{maximal_bilinear, maximal_quadratic};
use latmax_neighbor::{neighbors_with_points, sample_p_neighbors};
use serde_json::{json, Map, Value};

use crate::doc::{lattice_json, matrix_json, parse_ideal, parse_input, parse_kind, parse_mass, rat_str, Input};
use crate::{Cli, CliError, Command, Common};

/// A document to emit, and the error to exit with afterwards if the run stopped at a
/// resource bound with a partial result.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub doc: Value,
    pub error: Option<CliError>,
}

impl Outcome {
    fn ok(doc: Value) -> Outcome {
        Outcome { doc, error: None }
    }

    pub fn to_string_pretty(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.doc).expect("values serialize");
        s.push('\n');
        s
    }
}

fn read(path: &Path, common: &Common) -> Result<Input, CliError> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let mut input = parse_input(&text)?;
    if let Some(a) = &common.a {
        input.a = parse_ideal(a)?;
    }
    Ok(input)
}

fn max_points(common: &Common) -> u64 {
    common.max_points.unwrap_or_else(latmax_ffquadric::default_max_points)
}

fn provenance(common: &Common, extra: &[(&str, Value)]) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("seed".into(), json!(common.seed));
    m.insert("max_points".into(), json!(max_points(common)));
    for (k, v) in extra {
        m.insert((*k).into(), v.clone());
    }
    Value::Object(m)
}

fn check_prime(p: u64) -> Result<(), CliError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CliError::Precondition(format!("--prime {p} is not prime")))
    }
}

/// Lattice document with `algorithm`, `provenance` and any extra fields merged in.
fn lattice_doc(l: &Lattice, a: &Ideal, algorithm: &str, prov: Value, extra: Vec<(&str, Value)>) -> Value {
    let mut v = lattice_json(l, a);
    let m = v.as_object_mut().expect("object");
    m.insert("algorithm".into(), json!(algorithm));
    m.insert("provenance".into(), prov);
    for (k, x) in extra {
        m.insert(k.into(), x);
    }
    v
}

fn int_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn disc_summary(l: &Lattice, a: &Ideal) -> Result<Value, CliError> {
    let divisors = discriminant_group(l, a)?;
    let order: BigInt = divisors.iter().product();
    let parts = match discriminant_module(l, a) {
        Ok(dm) => Value::Array(
            dm.parts
                .values()
                .map(|part| json!({"p": part.p, "dim": part.dim, "gram_mod_p": part.form.gram()}))
                .collect(),
        ),
        Err(LatError::Unsaturated(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "elementary_divisors": divisors.iter().map(int_str).collect::<Vec<_>>(),
        "order": order.to_string(),
        "elementary": !parts.is_null(),
        "parts": parts,
    }))
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let common = &cli.common;
    let prov = || provenance(common, &[]);
    match &cli.command {
        Command::Dual { input } => {
            let Input { lattice, a } = read(input, common)?;
            let d = dual(&lattice, &a)?;
            Ok(Outcome::ok(lattice_doc(&d, &a, "dual/inverse-gram", prov(), vec![])))
        }
        Command::Jordan { input, prime } => {
            check_prime(*prime)?;
            let Input { lattice, .. } = read(input, common)?;
            let j = jordan_decomposition(&lattice, *prime);
            let blocks: Vec<Value> = j
                .blocks
                .iter()
                .map(|b| json!({"scale": b.scale, "dim": b.dim(), "gram": matrix_json(&b.gram), "basis": matrix_json(&b.basis)}))
                .collect();
            Ok(Outcome::ok(json!({
                "algorithm": "jordan/p-adic-splitting",
                "prime": prime,
                "blocks": blocks,
                "provenance": prov(),
            })))
        }
        Command::Saturate { input } => {
            let Input { lattice, a } = read(input, common)?;
            let s = saturate(&lattice, &a)?;
            let index = s.index_of(&lattice).map(|i| int_str(&i)).unwrap_or(Value::Null);
            Ok(Outcome::ok(lattice_doc(&s, &a, "saturate/dual-rescaling", prov(), vec![("index_over_input", index)])))
        }
        Command::Disc { input } => {
            let Input { lattice, a } = read(input, common)?;
            let mut v = disc_summary(&lattice, &a)?;
            let m = v.as_object_mut().expect("object");
            m.insert("algorithm".into(), json!("discriminant/smith-form"));
            m.insert("a".into(), json!(rat_str(a.generator())));
            m.insert("provenance".into(), prov());
            Ok(Outcome::ok(v))
        }
        Command::Maximal { input, kind } => {
            let Input { lattice, a } = read(input, common)?;
            let kind = match kind {
                Some(k) => parse_kind(k)?,
                None => lattice.kind(),
            };
            let space = Arc::new(Space::new(kind, lattice.space().gram().clone())?);
            let start = lattice.with_space(space.clone())?;
            let (m, algorithm) = match kind {
                FormKind::Bilinear => (maximal_bilinear(&space, &a, Some(&start))?, "maximal-bilinear/isotropic-adjunction"),
                FormKind::Quadratic => (maximal_quadratic(&space, &a, Some(&start))?, "maximal-quadratic/even-2-neighbor"),
            };
            let disc = disc_summary(&m, &a)?;
            Ok(Outcome::ok(lattice_doc(&m, &a, algorithm, prov(), vec![("discriminant", disc), ("certified", json!(true))])))
        }
        Command::Neighbors { input, prime, all: _, sample } => {
            check_prime(*prime)?;
            let Input { lattice, a } = read(input, common)?;
            let nb = |(pt, l): (Vec<u64>, Lattice)| json!({"point": pt, "lattice": lattice_json(&l, &a)});
            let (mode, list, attempts) = match sample {
                None => {
                    let v = neighbors_with_points(&lattice, *prime, &a, max_points(common))?;
                    ("all", v.into_iter().map(nb).collect::<Vec<_>>(), Value::Null)
                }
                Some(k) => {
                    let s = sample_p_neighbors(&lattice, *prime, &a, *k, common.seed)?;
                    let att = json!(s.attempts);
                    ("sample", s.points.into_iter().zip(s.neighbors).map(nb).collect(), att)
                }
            };
            Ok(Outcome::ok(json!({
                "algorithm": "neighbors/residual-quadric",
                "input": lattice_json(&lattice, &a),
                "prime": prime,
                "mode": mode,
                "complete": sample.is_none(),
                "count": list.len(),
                "attempts": attempts,
                "neighbors": list,
                "provenance": prov(),
            })))
        }
        Command::Genus { input, mass, jobs, max_primes } => {
            let Input { lattice, a } = read(input, common)?;
            let opts = GenusOptions {
                mass: mass.as_deref().map(parse_mass).transpose()?,
                jobs: (*jobs).max(1),
                max_primes: *max_primes,
                max_points: max_points(common),
            };
            let run = enumerate_genus(&lattice, &a, &opts)?;
            let classes: Vec<Value> = run
                .classes
                .iter()
                .map(|c| {
                    let term = Rational::new(BigInt::from(1), c.aut_order.clone());
                    json!({"lattice": lattice_json(&c.lattice, &a), "aut_order": int_str(&c.aut_order), "mass_term": rat_str(&term)})
                })
                .collect();
            let source = match run.mass_source {
                MassSource::Computed => "computed",
                MassSource::Supplied => "supplied",
            };
            let doc = json!({
                "algorithm": "genus/neighbor-closure-mass-terminated",
                "input": lattice_json(&lattice, &a),
                "class_count": classes.len(),
                "classes": classes,
                "mass": {
                    "target": rat_str(&run.target_mass),
                    "source": source,
                    "partial": rat_str(&run.partial_mass),
                    "complete": run.complete,
                },
                "primes_used": run.primes_used,
                "provenance": provenance(common, &[("max_primes", json!(max_primes))]),
            });
            let error = (!run.complete).then(|| {
                CliError::Resource(format!(
                    "partial mass {} short of {} after {} primes",
                    rat_str(&run.partial_mass),
                    rat_str(&run.target_mass),
                    max_primes
                ))
            });
            Ok(Outcome { doc, error })
        }
        Command::Auto { input } => {
            let Input { lattice, a } = read(input, common)?;
            let n = aut_order(&lattice)?;
            Ok(Outcome::ok(json!({
                "algorithm": "automorphisms/stabilizer-chain-backtracking",
                "input": lattice_json(&lattice, &a),
                "aut_order": int_str(&n),
                "provenance": prov(),
            })))
        }
        Command::Isometric { first, second } => {
            let x = read(first, common)?;
            let y = read(second, common)?;
            let iso = is_isometric(&x.lattice, &y.lattice)?;
            Ok(Outcome::ok(json!({
                "algorithm": "isometry/backtracking",
                "isometric": iso.is_some(),
                "images": iso.map(|i| matrix_json(&i.images)),
                "provenance": prov(),
            })))
        }
        Command::Mass { input } => {
            let Input { lattice, a } = read(input, common)?;
            let m = siegel_mass(&lattice)?;
            Ok(Outcome::ok(json!({
                "algorithm": "mass/local-densities",
                "input": lattice_json(&lattice, &a),
                "mass": rat_str(&m),
                "provenance": prov(),
            })))
        }
    }
}
