//! JSON encodings for scalars, matrices, Schur elements, block Toeplitz
//! matrices, algebras and classification results.
//!
//! Scalars are `{"re": "p/q", "im": "p/q"}` with reduced fractions and a
//! positive denominator. Block Toeplitz diagonals are keyed by their index as
//! a decimal string; absent keys are zero diagonals.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};

use crate::algebra::{AlgebraBasis, GeneratorPair, MaximalityCertificate};
use crate::classify::{AlgebraInput, ClassificationResult, Verdict};
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::ComplexRational;
use crate::schur::{SchurElement, SchurShape};
use crate::toeplitz::BlockToeplitz;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ScalarWire {
    pub re: String,
    pub im: String,
}

impl From<&ComplexRational> for ScalarWire {
    fn from(c: &ComplexRational) -> Self {
        ScalarWire {
            re: c.re_string(),
            im: c.im_string(),
        }
    }
}

impl ScalarWire {
    pub fn to_scalar(&self) -> Result<ComplexRational> {
        ComplexRational::from_strings(&self.re, &self.im)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<ScalarWire>>,
}

impl From<&DenseMatrix> for MatrixWire {
    fn from(m: &DenseMatrix) -> Self {
        MatrixWire {
            rows: m.rows(),
            cols: m.cols(),
            entries: m
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ScalarWire::from).collect())
                .collect(),
        }
    }
}

impl MatrixWire {
    pub fn to_matrix(&self) -> Result<DenseMatrix> {
        let rows = parse_grid(&self.entries)?;
        let m = DenseMatrix::from_rows(rows)?;
        if m.rows() != self.rows || (self.rows > 0 && m.cols() != self.cols) {
            return Err(Error::Parse(format!(
                "declared {}x{} but entries are {}x{}",
                self.rows,
                self.cols,
                m.rows(),
                m.cols()
            )));
        }
        Ok(m)
    }
}

fn parse_grid(grid: &[Vec<ScalarWire>]) -> Result<Vec<Vec<ComplexRational>>> {
    grid.iter()
        .map(|r| r.iter().map(ScalarWire::to_scalar).collect())
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchurWire {
    pub sigma: usize,
    pub tau: usize,
    pub lambda: ScalarWire,
    #[serde(rename = "X", default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Vec<ScalarWire>>>,
}

impl From<&SchurElement> for SchurWire {
    fn from(e: &SchurElement) -> Self {
        SchurWire {
            sigma: e.shape().sigma(),
            tau: e.shape().tau(),
            lambda: e.lambda().into(),
            x: Some(
                e.x()
                    .to_rows()
                    .iter()
                    .map(|r| r.iter().map(ScalarWire::from).collect())
                    .collect(),
            ),
        }
    }
}

fn make_shape(sigma: usize, tau: usize, relaxed: bool) -> Result<SchurShape> {
    if relaxed {
        SchurShape::relaxed(sigma, tau)
    } else {
        SchurShape::new(sigma, tau)
    }
}

impl SchurWire {
    pub fn to_element(&self, relaxed: bool) -> Result<SchurElement> {
        let shape = make_shape(self.sigma, self.tau, relaxed)?;
        let lambda = self.lambda.to_scalar()?;
        let x = match &self.x {
            None => DenseMatrix::zeros(shape.sigma(), shape.tau()),
            Some(grid) => {
                let rows = parse_grid(grid)?;
                if rows.len() != shape.sigma() || rows.iter().any(|r| r.len() != shape.tau()) {
                    return Err(Error::DimensionMismatch(format!(
                        "X must have {} rows of {} entries",
                        shape.sigma(),
                        shape.tau()
                    )));
                }
                DenseMatrix::from_rows(rows)?
            }
        };
        SchurElement::new(shape, lambda, x)
    }
}

/// Diagonals in numeric order (a `BTreeMap<String, _>` would sort "-1" before "-2").
#[derive(Clone, Debug, Default)]
pub struct DiagonalBlocks(pub Vec<(i64, SchurWire)>);

impl Serialize for DiagonalBlocks {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (j, b) in &self.0 {
            map.serialize_entry(&j.to_string(), b)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for DiagonalBlocks {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = BTreeMap::<String, SchurWire>::deserialize(d)?;
        let mut out = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            // Accept the Unicode minus sign as well as ASCII '-'.
            let key = k.trim().replace('\u{2212}', "-");
            let j: i64 = key
                .parse()
                .map_err(|_| serde::de::Error::custom(format!("invalid diagonal key {k:?}")))?;
            out.push((j, v));
        }
        out.sort_by_key(|(j, _)| *j);
        if out.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(serde::de::Error::custom("duplicate diagonal key"));
        }
        Ok(DiagonalBlocks(out))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockToeplitzWire {
    pub n: usize,
    pub sigma: usize,
    pub tau: usize,
    pub blocks: DiagonalBlocks,
}

impl From<&BlockToeplitz> for BlockToeplitzWire {
    fn from(t: &BlockToeplitz) -> Self {
        BlockToeplitzWire {
            n: t.n(),
            sigma: t.shape().sigma(),
            tau: t.shape().tau(),
            blocks: DiagonalBlocks(t.blocks().map(|(j, b)| (j, b.into())).collect()),
        }
    }
}

impl BlockToeplitzWire {
    pub fn to_block_toeplitz(&self, relaxed: bool) -> Result<BlockToeplitz> {
        let shape = make_shape(self.sigma, self.tau, relaxed)?;
        let blocks = self
            .blocks
            .0
            .iter()
            .map(|(j, w)| {
                let e = w.to_element(relaxed)?;
                if e.shape() != shape {
                    return Err(Error::DimensionMismatch(format!(
                        "block {j} has shape {} but the matrix declares {shape}",
                        e.shape()
                    )));
                }
                Ok((*j, e))
            })
            .collect::<Result<Vec<_>>>()?;
        BlockToeplitz::new(self.n, shape, blocks)
    }
}

/// Either `{"generators": [...]}` or `{"basis": [...], "closed": true}`.
#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct AlgebraWire {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<BlockToeplitzWire>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BlockToeplitzWire>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed: Option<bool>,
    /// A representative element; informational, not used by classification.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<BlockToeplitzWire>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AlgebraWire {
    pub fn from_generators(gens: &[BlockToeplitz]) -> Self {
        AlgebraWire {
            generators: Some(gens.iter().map(Into::into).collect()),
            ..AlgebraWire::default()
        }
    }

    pub fn from_basis(alg: &AlgebraBasis) -> Self {
        AlgebraWire {
            basis: Some(alg.elements().iter().map(Into::into).collect()),
            closed: Some(true),
            ..AlgebraWire::default()
        }
    }

    pub fn to_input(&self, relaxed: bool) -> Result<AlgebraInput> {
        let convert = |ws: &[BlockToeplitzWire]| -> Result<Vec<BlockToeplitz>> {
            if ws.is_empty() {
                return Err(Error::EmptyGenerators);
            }
            let ts = ws
                .iter()
                .map(|w| w.to_block_toeplitz(relaxed))
                .collect::<Result<Vec<_>>>()?;
            let (n, shape) = (ts[0].n(), ts[0].shape());
            if let Some(bad) = ts.iter().position(|t| t.n() != n || t.shape() != shape) {
                return Err(Error::DimensionMismatch(format!(
                    "element #{bad} differs in order or shape from element #0"
                )));
            }
            Ok(ts)
        };
        match (&self.generators, &self.basis) {
            (Some(g), None) => Ok(AlgebraInput::Generators(convert(g)?)),
            (None, Some(b)) => Ok(AlgebraInput::Basis {
                basis: convert(b)?,
                closed: self.closed.unwrap_or(false),
            }),
            (Some(_), Some(_)) => Err(Error::Parse(
                "algebra has both \"generators\" and \"basis\"".into(),
            )),
            (None, None) => Err(Error::Parse(
                "algebra needs \"generators\" or \"basis\"".into(),
            )),
        }
    }
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn parse_scalar(text: &str) -> Result<ComplexRational> {
    serde_json::from_str::<ScalarWire>(text)
        .map_err(parse_err)?
        .to_scalar()
}

pub fn parse_matrix(text: &str) -> Result<DenseMatrix> {
    serde_json::from_str::<MatrixWire>(text)
        .map_err(parse_err)?
        .to_matrix()
}

pub fn parse_schur(text: &str, relaxed: bool) -> Result<SchurElement> {
    serde_json::from_str::<SchurWire>(text)
        .map_err(parse_err)?
        .to_element(relaxed)
}

pub fn parse_block_toeplitz(text: &str, relaxed: bool) -> Result<BlockToeplitz> {
    serde_json::from_str::<BlockToeplitzWire>(text)
        .map_err(parse_err)?
        .to_block_toeplitz(relaxed)
}

/// Parses Algebra JSON. Serde errors carry line and column.
pub fn parse_algebra(text: &str, relaxed: bool) -> Result<AlgebraInput> {
    serde_json::from_str::<AlgebraWire>(text)
        .map_err(parse_err)?
        .to_input(relaxed)
}

pub fn schur_to_value(e: &SchurElement) -> Value {
    serde_json::to_value(SchurWire::from(e)).expect("wire types serialize")
}

pub fn block_toeplitz_to_value(t: &BlockToeplitz) -> Value {
    serde_json::to_value(BlockToeplitzWire::from(t)).expect("wire types serialize")
}

pub fn pair_to_value(p: &GeneratorPair) -> Value {
    json!({ "A": schur_to_value(p.a()), "B": schur_to_value(p.b()) })
}

/// `{"dimension": k, "basis": [...]}`.
pub fn algebra_report(alg: &AlgebraBasis) -> Value {
    json!({
        "n": alg.n(),
        "sigma": alg.shape().sigma(),
        "tau": alg.shape().tau(),
        "dimension": alg.dim(),
        "basis": alg.elements().iter().map(block_toeplitz_to_value).collect::<Vec<_>>(),
    })
}

pub fn classification_to_value(r: &ClassificationResult) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("verdict".into(), json!(r.verdict.tag()));
    if let Some(p) = r.verdict.pair() {
        obj.insert("pair".into(), pair_to_value(p));
    }
    obj.insert("dimension".into(), json!(r.algebra_dimension));
    obj.insert("ambient_dimension".into(), json!(r.ambient_dimension));
    match &r.verdict {
        Verdict::ContainedInTypeI { codimension, .. }
        | Verdict::ContainedInTypeII { codimension } => {
            obj.insert("codimension".into(), json!(codimension));
        }
        Verdict::Rejected { reason } => {
            obj.insert("reason".into(), json!(reason));
        }
        _ => {}
    }
    let certificate = match &r.certificate {
        Some(MaximalityCertificate::Certified) => json!("certified"),
        Some(MaximalityCertificate::Inconclusive { witness }) => {
            obj.insert("witness".into(), block_toeplitz_to_value(witness));
            json!("inconclusive")
        }
        None => Value::Null,
    };
    obj.insert("certificate".into(), certificate);
    obj.insert("notes".into(), json!(r.notes));
    Value::Object(obj)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape21() -> SchurShape {
        SchurShape::new(2, 1).unwrap()
    }

    #[test]
    fn scalar_encoding() {
        let c = ComplexRational::from_parts((-2, 4), (0, 1));
        let v = serde_json::to_value(ScalarWire::from(&c)).unwrap();
        assert_eq!(v, json!({"re": "-1/2", "im": "0/1"}));
        assert_eq!(parse_scalar(&v.to_string()).unwrap(), c);
        assert!(parse_scalar(r#"{"re": "1/0", "im": "0/1"}"#).is_err());
    }

    #[test]
    fn matrix_encoding() {
        let m = DenseMatrix::from_ints(&[&[1, 2], &[3, 4]]).unwrap();
        let text = serde_json::to_string(&MatrixWire::from(&m)).unwrap();
        assert_eq!(parse_matrix(&text).unwrap(), m);
        let bad = r#"{"rows": 3, "cols": 2, "entries": [[{"re":"1/1","im":"0/1"},{"re":"1/1","im":"0/1"}]]}"#;
        assert!(parse_matrix(bad).is_err());
    }

    #[test]
    fn schur_with_omitted_x_is_scalar() {
        let e = parse_schur(
            r#"{"sigma": 2, "tau": 1, "lambda": {"re": "3/1", "im": "0/1"}}"#,
            false,
        )
        .unwrap();
        assert_eq!(
            e,
            SchurElement::scalar(shape21(), ComplexRational::from_int(3))
        );
    }

    #[test]
    fn schur_shape_policy() {
        let text = r#"{"sigma": 3, "tau": 1, "lambda": {"re": "1/1", "im": "0/1"}}"#;
        assert!(matches!(
            parse_schur(text, false),
            Err(Error::InvalidShape { .. })
        ));
        assert!(parse_schur(text, true).is_ok());
    }

    #[test]
    fn block_toeplitz_keys_are_numeric_and_ordered() {
        let s = shape21();
        let t = BlockToeplitz::new(
            3,
            s,
            [
                (-2, SchurElement::identity(s)),
                (-1, SchurElement::radical_unit(s, 1, 0)),
                (2, SchurElement::identity(s)),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&BlockToeplitzWire::from(&t)).unwrap();
        let a = text.find("\"-2\"").unwrap();
        let b = text.find("\"-1\"").unwrap();
        let c = text.find("\"2\"").unwrap();
        assert!(a < b && b < c);
        assert_eq!(parse_block_toeplitz(&text, false).unwrap(), t);
        let unicode = text.replace("\"-2\"", "\"\u{2212}2\"");
        assert_eq!(parse_block_toeplitz(&unicode, false).unwrap(), t);
    }

    #[test]
    fn block_toeplitz_index_guard() {
        let text = r#"{"n": 3, "sigma": 2, "tau": 1, "blocks": {"3": {"sigma": 2, "tau": 1, "lambda": {"re": "1/1", "im": "0/1"}}}}"#;
        assert_eq!(
            parse_block_toeplitz(text, false),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
    }

    #[test]
    fn truncated_algebra_reports_position() {
        let err = parse_algebra("{\"generators\": [", false).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn algebra_needs_exactly_one_list() {
        assert!(parse_algebra("{}", false).is_err());
        assert!(parse_algebra(r#"{"generators": []}"#, false).is_err());
    }
}
