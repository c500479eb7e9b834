//! JSON layouts: matrices as arrays of rows, rational entries as "p/q" strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::exact::{self, QMatrix};
use crate::linalg::Matrix;
use crate::pair::MetricPair;

pub fn rows(m: &Matrix) -> Vec<Vec<f64>> {
    (0..m.nrows()).map(|r| m.row(r).iter().copied().collect()).collect()
}

pub fn from_rows(rows: &[Vec<f64>]) -> Option<Matrix> {
    let n = rows.len();
    let c = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != c) {
        return None;
    }
    Some(Matrix::from_fn(n, c, |i, j| rows[i][j]))
}

/// `#[serde(with = "json::matrix")]` for a single matrix.
pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        rows(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let r = Vec::<Vec<f64>>::deserialize(d)?;
        from_rows(&r).ok_or_else(|| D::Error::custom("ragged matrix"))
    }
}

/// `#[serde(with = "json::matrices")]` for a list of matrices.
pub mod matrices {
    use super::*;

    pub fn serialize<S: Serializer>(ms: &[Matrix], s: S) -> Result<S::Ok, S::Error> {
        ms.iter().map(rows).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Matrix>, D::Error> {
        let r = Vec::<Vec<Vec<f64>>>::deserialize(d)?;
        r.iter().map(|m| from_rows(m).ok_or_else(|| D::Error::custom("ragged matrix"))).collect()
    }
}

fn exact_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| exact::format_rational(&m[(r, c)])).collect()).collect()
}

#[derive(Serialize)]
struct PairOut<T> {
    dim_a: usize,
    v_basis: Vec<Vec<Vec<T>>>,
    gram: Vec<Vec<T>>,
}

impl Serialize for MetricPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.exact().and_then(|e| e.gram.as_ref().map(|g| (e, g))) {
            Some((e, g)) => PairOut { dim_a: self.dim_a(), v_basis: e.v_basis.iter().map(exact_rows).collect(), gram: exact_rows(g) }.serialize(s),
            None => PairOut { dim_a: self.dim_a(), v_basis: self.v_basis().iter().map(rows).collect(), gram: rows(self.gram()) }.serialize(s),
        }
    }
}

enum Entry {
    Exact(exact::Rational),
    Float(f64),
}

fn entry(v: &Value) -> Result<Entry, String> {
    match v {
        Value::String(s) => exact::parse_rational(s).map(Entry::Exact).ok_or_else(|| format!("invalid rational '{s}'")),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Entry::Exact(exact::rat(i))),
            None => n.as_f64().map(Entry::Float).ok_or_else(|| "invalid number".into()),
        },
        _ => Err("matrix entries must be numbers or rational strings".into()),
    }
}

/// Parses a matrix; the exact version is present when every entry is rational.
fn parse_matrix(v: &Value) -> Result<(Matrix, Option<QMatrix>), String> {
    let rows = v.as_array().ok_or("matrix must be an array of rows")?;
    let parsed: Vec<Vec<Entry>> =
        rows.iter().map(|r| r.as_array().ok_or("row must be an array".to_string())?.iter().map(entry).collect()).collect::<Result<_, _>>()?;
    let n = parsed.len();
    let c = parsed.first().map_or(0, |r| r.len());
    if parsed.iter().any(|r| r.len() != c) {
        return Err("ragged matrix".into());
    }
    let float = Matrix::from_fn(n, c, |i, j| match &parsed[i][j] {
        Entry::Exact(q) => exact::to_f64(q),
        Entry::Float(x) => *x,
    });
    let all_exact = parsed.iter().all(|r| r.iter().all(|e| matches!(e, Entry::Exact(_))));
    let q = all_exact.then(|| {
        QMatrix::from_fn(n, c, |i, j| match &parsed[i][j] {
            Entry::Exact(q) => q.clone(),
            Entry::Float(_) => unreachable!(),
        })
    });
    Ok((float, q))
}

pub fn pair_from_value(v: &Value) -> crate::Result<MetricPair> {
    let err = |m: String| crate::Error::Parse(m);
    let dim_a = v.get("dim_a").and_then(Value::as_u64).ok_or_else(|| err("missing dim_a".into()))? as usize;
    let basis = v.get("v_basis").and_then(Value::as_array).ok_or_else(|| err("missing v_basis".into()))?;
    let parsed: Vec<(Matrix, Option<QMatrix>)> = basis.iter().map(parse_matrix).collect::<Result<_, _>>().map_err(err)?;
    let gram = v.get("gram").map(parse_matrix).transpose().map_err(err)?;
    let exact: Option<Vec<QMatrix>> = parsed.iter().map(|(_, q)| q.clone()).collect();
    match (exact, gram) {
        (Some(e), Some((_, Some(g)))) => MetricPair::from_exact(dim_a, e, Some(g)),
        (Some(e), None) => MetricPair::from_exact(dim_a, e, None),
        (_, g) => {
            let floats = parsed.into_iter().map(|(m, _)| m).collect();
            match g {
                Some((g, _)) => MetricPair::new(dim_a, floats, g),
                None => MetricPair::with_standard(dim_a, floats),
            }
        }
    }
}

impl<'de> Deserialize<'de> for MetricPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        pair_from_value(&v).map_err(D::Error::custom)
    }
}
