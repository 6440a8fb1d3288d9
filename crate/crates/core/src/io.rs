//! File formats: partition JSON, closure dumps (JSON lines), sparse matrices
//! in MatrixMarket coordinate form, and matrix models as JSON.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::closure::{ClosureSet, Step};
use crate::linalg::{RatMatrix, Rational, SpMatrix};
use crate::named;
use crate::partition::{PartitionError, PointRef, Side, SpatialPartition};
use crate::relations::{MatrixModel, RelationError};
use crate::tensor_maps::Dims;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Model(#[from] RelationError),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub k: usize,
    pub l: usize,
    pub m: usize,
    /// Points as `["u" | "l", col, level]`.
    pub blocks: Vec<Vec<(String, usize, usize)>>,
}

impl From<&SpatialPartition> for PartitionJson {
    fn from(p: &SpatialPartition) -> Self {
        PartitionJson {
            k: p.upper(),
            l: p.lower(),
            m: p.levels(),
            blocks: p
                .blocks()
                .into_iter()
                .map(|b| {
                    b.into_iter()
                        .map(|pt| {
                            let side = match pt.side {
                                Side::Upper => "u",
                                Side::Lower => "l",
                            };
                            (side.to_string(), pt.col, pt.level)
                        })
                        .collect()
                })
                .collect(),
        }
    }
}

impl TryFrom<PartitionJson> for SpatialPartition {
    type Error = IoError;

    fn try_from(j: PartitionJson) -> Result<Self, IoError> {
        let mut blocks = Vec::with_capacity(j.blocks.len());
        for b in j.blocks {
            let mut pts = Vec::with_capacity(b.len());
            for (side, col, level) in b {
                let side = match side.as_str() {
                    "u" | "U" => Side::Upper,
                    "l" | "L" => Side::Lower,
                    other => return Err(IoError::Format(format!("unknown side `{other}`"))),
                };
                pts.push(PointRef { side, col, level });
            }
            blocks.push(pts);
        }
        Ok(SpatialPartition::new(j.k, j.l, j.m, blocks)?)
    }
}

pub fn partition_to_json(p: &SpatialPartition) -> String {
    serde_json::to_string(&PartitionJson::from(p)).expect("plain data serializes")
}

pub fn partition_from_json(s: &str) -> Result<SpatialPartition, IoError> {
    let j: PartitionJson = serde_json::from_str(s)?;
    j.try_into()
}

/// Reads JSON, the compact `P(k,l;m){…}` form, or `@name` from the catalogue.
pub fn parse_partition(s: &str) -> Result<SpatialPartition, IoError> {
    let s = s.trim();
    if let Some(name) = s.strip_prefix('@') {
        return named::lookup(name).ok_or_else(|| {
            IoError::Format(format!(
                "unknown partition name `{name}`; known: {}",
                named::NAMES.join(", ")
            ))
        });
    }
    if s.starts_with('{') {
        return partition_from_json(s);
    }
    Ok(s.parse()?)
}

#[derive(Serialize, Deserialize)]
struct ClosureLine {
    #[serde(flatten)]
    partition: PartitionJson,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    generator: bool,
}

/// One partition per line in discovery order; generators carry `"generator": true`.
pub fn write_closure_jsonl<W: Write>(cs: &ClosureSet, mut w: W) -> Result<(), IoError> {
    for (id, p) in cs.members().iter().enumerate() {
        let line = ClosureLine {
            partition: p.into(),
            generator: cs.step(id) == Step::Generator,
        };
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

/// A closure dump read back: all members, and the subset marked as generators.
#[derive(Clone, Debug, Default)]
pub struct ClosureDump {
    pub members: Vec<SpatialPartition>,
    pub generators: Vec<SpatialPartition>,
}

pub fn read_closure_jsonl<R: BufRead>(r: R) -> Result<ClosureDump, IoError> {
    let mut dump = ClosureDump::default();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: ClosureLine = serde_json::from_str(&line)?;
        let p: SpatialPartition = parsed.partition.try_into()?;
        if parsed.generator {
            dump.generators.push(p.clone());
        }
        dump.members.push(p);
    }
    Ok(dump)
}

/// MatrixMarket coordinate format with 1-based indices. Entries must be integers.
pub fn write_matrix_market<W: Write>(m: &SpMatrix, mut w: W) -> Result<(), IoError> {
    writeln!(w, "%%MatrixMarket matrix coordinate integer general")?;
    writeln!(w, "{} {} {}", m.rows(), m.cols(), m.nnz())?;
    for (r, c, v) in m.iter() {
        if !v.is_integer() {
            return Err(IoError::Format(format!("entry ({r},{c}) = {v} is not an integer")));
        }
        writeln!(w, "{} {} {}", r + 1, c + 1, v.to_integer())?;
    }
    Ok(())
}

pub fn read_matrix_market<R: BufRead>(r: R) -> Result<SpMatrix, IoError> {
    let mut lines = r
        .lines()
        .map(|l| l.map_err(IoError::from))
        .filter(|l| !matches!(l, Ok(s) if s.starts_with('%') || s.trim().is_empty()));
    let header = lines
        .next()
        .ok_or_else(|| IoError::Format("missing size line".into()))??;
    let nums: Vec<usize> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| IoError::Format(format!("bad size line `{header}`")))
        })
        .collect::<Result<_, _>>()?;
    let [rows, cols, nnz] = nums[..] else {
        return Err(IoError::Format(format!("bad size line `{header}`")));
    };
    let mut m = SpMatrix::zeros(rows, cols);
    let mut seen = 0;
    for line in lines {
        let line = line?;
        let t: Vec<&str> = line.split_whitespace().collect();
        let bad = || IoError::Format(format!("bad entry line `{line}`"));
        if t.len() != 3 {
            return Err(bad());
        }
        let r: usize = t[0].parse().map_err(|_| bad())?;
        let c: usize = t[1].parse().map_err(|_| bad())?;
        let v: BigInt = t[2].parse().map_err(|_| bad())?;
        if r == 0 || c == 0 || r > rows || c > cols {
            return Err(bad());
        }
        m.add_to(r - 1, c - 1, Rational::from_integer(v));
        seen += 1;
    }
    if seen != nnz {
        return Err(IoError::Format(format!("expected {nnz} entries, read {seen}")));
    }
    Ok(m)
}

fn parse_rational(v: &Value) -> Result<Rational, IoError> {
    let bad = || IoError::Format(format!("`{v}` is not a rational"));
    match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(bad)?;
            Ok(Rational::from_integer(BigInt::from(i)))
        }
        Value::String(s) => {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                    let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                    if b.is_zero() {
                        return Err(bad());
                    }
                    Ok(Rational::new(a, b))
                }
                None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
            }
        }
        _ => Err(bad()),
    }
}

fn rational_json(r: &Rational) -> Value {
    if r.is_integer() {
        if let Ok(i) = i64::try_from(r.to_integer()) {
            return Value::from(i);
        }
    }
    Value::from(r.to_string())
}

fn tuple_key(d: &Dims, idx: usize) -> String {
    d.tuple_at(idx)
        .iter()
        .map(|x| (x + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_tuple_key(d: &Dims, s: &str) -> Result<usize, IoError> {
    let t: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| IoError::Format(format!("bad tuple `{s}`")))?;
    if t.len() != d.levels() || t.iter().zip(d.as_slice()).any(|(&x, &n)| x == 0 || x > n) {
        return Err(IoError::Format(format!("tuple `{s}` outside dims {d}")));
    }
    Ok(d.tuple_index(&t.iter().map(|x| x - 1).collect::<Vec<_>>()))
}

/// `{"dims":[…],"rep_dim":d,"entries":{"i1,i2|j1,j2":[[…],…]}}` with 1-based
/// tuple entries and rationals as integers or `"a/b"` strings. Missing
/// entries are rejected; explicit zero matrices may be omitted only when
/// `"zero_default": true` is set.
pub fn model_from_json(s: &str) -> Result<MatrixModel, IoError> {
    let v: Value = serde_json::from_str(s)?;
    let obj = v
        .as_object()
        .ok_or_else(|| IoError::Format("model must be an object".into()))?;
    let dims: Vec<usize> = serde_json::from_value(obj.get("dims").cloned().unwrap_or(Value::Null))?;
    let dims = Dims::new(dims).map_err(|e| IoError::Format(e.to_string()))?;
    let rep_dim: usize = serde_json::from_value(obj.get("rep_dim").cloned().unwrap_or(Value::from(1)))?;
    let zero_default = obj.get("zero_default").and_then(Value::as_bool).unwrap_or(false);
    let entries = obj
        .get("entries")
        .and_then(Value::as_object)
        .ok_or_else(|| IoError::Format("missing `entries` object".into()))?;
    let n = dims.total();
    let mut cells: Vec<Option<RatMatrix>> = vec![None; n * n];
    for (key, val) in entries {
        let (i, j) = key
            .split_once('|')
            .ok_or_else(|| IoError::Format(format!("entry key `{key}` lacks `|`")))?;
        let (i, j) = (parse_tuple_key(&dims, i)?, parse_tuple_key(&dims, j)?);
        let rows = match val {
            Value::Array(rows) if rows.iter().all(Value::is_array) => rows
                .iter()
                .map(|r| r.as_array().unwrap().iter().map(parse_rational).collect())
                .collect::<Result<Vec<Vec<Rational>>, _>>()?,
            scalar => vec![vec![parse_rational(scalar)?]],
        };
        let m = RatMatrix::from_rows(rows).ok_or_else(|| IoError::Format(format!("ragged matrix at `{key}`")))?;
        cells[i * n + j] = Some(m);
    }
    let mut out = Vec::with_capacity(n * n);
    for (x, c) in cells.into_iter().enumerate() {
        match c {
            Some(m) => out.push(m),
            None if zero_default => out.push(RatMatrix::zeros(rep_dim, rep_dim)),
            None => {
                return Err(RelationError::IncompleteModel(format!(
                    "missing entry {}|{}",
                    tuple_key(&dims, x / n),
                    tuple_key(&dims, x % n)
                ))
                .into())
            }
        }
    }
    Ok(MatrixModel::new(dims, rep_dim, out)?)
}

pub fn model_to_json(model: &MatrixModel) -> String {
    let d = model.dims();
    let n = d.total();
    let mut entries = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let e = model.entry(i, j);
            let rows: Vec<Value> = (0..e.rows())
                .map(|r| Value::Array(e.row(r).iter().map(rational_json).collect()))
                .collect();
            entries.insert(format!("{}|{}", tuple_key(d, i), tuple_key(d, j)), Value::Array(rows));
        }
    }
    let v = serde_json::json!({
        "dims": d.as_slice(),
        "rep_dim": model.rep_dim(),
        "entries": entries,
    });
    serde_json::to_string_pretty(&v).expect("plain data serializes")
}

/// Renders a rational for humans.
pub fn show_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{generate_closure, Bounds};
    use crate::linalg::rat;
    use crate::tensor_maps::{s_map, SizeCap};

    #[test]
    fn partition_json_round_trip() {
        let p = named::half_three();
        let s = partition_to_json(&p);
        assert!(s.contains("\"blocks\""));
        assert_eq!(partition_from_json(&s).unwrap(), p);
        assert_eq!(parse_partition(&s).unwrap(), p);
        assert_eq!(parse_partition(&p.to_string()).unwrap(), p);
        assert_eq!(parse_partition("@level-pair").unwrap(), named::level_pair());
        assert!(parse_partition("@nothing").is_err());
        let overlap = r#"{"k":0,"l":2,"m":1,"blocks":[[["l",1,1]],[["l",1,1]]]}"#;
        assert!(matches!(
            partition_from_json(overlap),
            Err(IoError::Partition(PartitionError::Overlap(_)))
        ));
    }

    #[test]
    fn closure_dump_round_trip() {
        let cs = generate_closure(&[named::cross()], 1, Bounds::with_max_cols(4)).unwrap();
        let mut buf = Vec::new();
        write_closure_jsonl(&cs, &mut buf).unwrap();
        let dump = read_closure_jsonl(&buf[..]).unwrap();
        assert_eq!(dump.members, cs.members());
        assert_eq!(dump.generators, vec![named::cross()]);
    }

    #[test]
    fn matrix_market_round_trip() {
        let m = s_map(&named::pair(2), &Dims::uniform(2, 2), SizeCap::default()).unwrap();
        let mut buf = Vec::new();
        write_matrix_market(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n16 1 4\n1 1 1\n"));
        assert_eq!(read_matrix_market(&buf[..]).unwrap(), m);
        let mut half = SpMatrix::zeros(1, 1);
        half.set(0, 0, Rational::new(1.into(), 2.into()));
        assert!(write_matrix_market(&half, Vec::new()).is_err());
    }

    #[test]
    fn model_json_round_trip() {
        let model = MatrixModel::permutation_square(&[1, 0]).scaled(&Rational::new(1.into(), 3.into()));
        let s = model_to_json(&model);
        assert_eq!(model_from_json(&s).unwrap(), model);
        let sparse = r#"{"dims":[2],"rep_dim":1,"zero_default":true,"entries":{"1|1":1,"2|2":[[1]]}}"#;
        let m = model_from_json(sparse).unwrap();
        assert_eq!(m, MatrixModel::identity(Dims::uniform(2, 1)));
        let missing = r#"{"dims":[2],"rep_dim":1,"entries":{"1|1":1}}"#;
        assert!(matches!(model_from_json(missing), Err(IoError::Model(_))));
        assert_eq!(show_rational(&rat(3)), "3");
    }
}
