//! The lattice file format: `{"kind", "dim", "gram", "basis"?, "a"?}` with every rational
//! written as a "p/q" string.

use std::sync::Arc;

use latmax_core::{format_rational, parse_rational, CoreError, FormKind, Ideal, Lattice, RatMatrix, Rational, Space};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::CliError;

/// Unknown fields are ignored so that any emitted document parses back.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub kind: String,
    pub dim: usize,
    pub gram: Vec<Vec<String>>,
    #[serde(default)]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub a: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Input {
    pub lattice: Lattice,
    pub a: Ideal,
}

fn parse_matrix(rows: &[Vec<String>], name: &str, n: usize) -> Result<RatMatrix, CliError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Parse(format!("{name} must be a {n}×{n} matrix")));
    }
    let rows: Vec<Vec<Rational>> = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()
        .map_err(|e| CliError::Parse(format!("{name}: {e}")))?;
    Ok(RatMatrix::from_rows(&rows))
}

pub fn parse_kind(s: &str) -> Result<FormKind, CliError> {
    match s {
        "quadratic" => Ok(FormKind::Quadratic),
        "bilinear" => Ok(FormKind::Bilinear),
        _ => Err(CliError::Parse(format!("kind must be \"quadratic\" or \"bilinear\", got {s:?}"))),
    }
}

pub fn parse_ideal(s: &str) -> Result<Ideal, CliError> {
    let g = parse_rational(s).map_err(|e| CliError::Parse(e.to_string()))?;
    Ideal::new(g).map_err(|e| CliError::Precondition(e.to_string()))
}

pub fn parse_mass(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Parse(e.to_string()))
}

impl LatticeDoc {
    pub fn into_input(self) -> Result<Input, CliError> {
        let kind = parse_kind(&self.kind)?;
        if self.dim == 0 {
            return Err(CliError::Parse("dim must be positive".into()));
        }
        let gram = parse_matrix(&self.gram, "gram", self.dim)?;
        let space = Space::new(kind, gram).map_err(|e| match e {
            CoreError::NotSymmetric => CliError::Parse("gram matrix is not symmetric".into()),
            e => CliError::Precondition(e.to_string()),
        })?;
        let space = Arc::new(space);
        let lattice = match &self.basis {
            None => Lattice::standard(space),
            Some(rows) => {
                let b = parse_matrix(rows, "basis", self.dim)?;
                Lattice::new(space, b).map_err(|e| CliError::Precondition(format!("basis: {e}")))?
            }
        };
        let a = match &self.a {
            None => Ideal::one(),
            Some(s) => parse_ideal(s)?,
        };
        Ok(Input { lattice, a })
    }
}

pub fn parse_input(text: &str) -> Result<Input, CliError> {
    let doc: LatticeDoc = serde_json::from_str(text).map_err(|e| CliError::Parse(format!("schema: {e}")))?;
    doc.into_input()
}

pub fn rat_str(x: &Rational) -> String {
    format_rational(x)
}

pub fn matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(rat_str(x))).collect())).collect(),
    )
}

/// The lattice as a file document, plus its Gram matrix in the canonical basis.
pub fn lattice_json(l: &Lattice, a: &Ideal) -> Value {
    json!({
        "kind": l.kind().as_str(),
        "dim": l.dim(),
        "gram": matrix_json(l.space().gram()),
        "basis": matrix_json(l.basis()),
        "a": rat_str(a.generator()),
        "lattice_gram": matrix_json(&l.form_gram()),
    })
}
