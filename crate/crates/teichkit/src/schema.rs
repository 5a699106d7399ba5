//! Versioned JSON encodings (`"schema": "teichkit/1"`) for graphs, words,
//! assignments, surfaces and matrices.
//!
//! Exact rationals are written as `"p/q"` strings, floats as JSON numbers.
//! Structural problems (bad JSON, wrong tag, malformed tokens, empty words) are
//! [`DecodeError::Schema`] with a line and column; everything the library rejects
//! after parsing is [`DecodeError::Domain`].

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::de::{self, DeserializeOwned, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use thiserror::Error as ThisError;

use crate::error::Error;
use crate::fatgraph::{EdgeKind, FatGraph, Param, PathWord, Token, Vertex};
use crate::flags::{Bary, Side};
use crate::matrix::Matrix;
use crate::scalar::{Rational, Scalar};
use crate::snakes::FGAssignment;
use crate::surface::{SideRef, TrianglePathWord, TriangulatedSurface};

pub const SCHEMA: &str = "teichkit/1";

#[derive(Debug, ThisError)]
pub enum DecodeError {
    #[error("schema error at line {line}, column {column}: {message}")]
    Schema { line: usize, column: usize, message: String },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl From<serde_json::Error> for DecodeError {
    fn from(e: serde_json::Error) -> Self {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let message = full.strip_suffix(&suffix).unwrap_or(&full).to_string();
        DecodeError::Schema { line: e.line(), column: e.column(), message }
    }
}

/// Scalars with a JSON form.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Option<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(format!("{}/{}", self.numer(), self.denom()))
    }
    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => Rational::parse(s),
            Value::Number(n) => Rational::parse(&n.to_string()),
            _ => None,
        }
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self).map(Value::Number).unwrap_or(Value::Null)
    }
    fn from_json(v: &Value) -> Option<Self> {
        match v {
            Value::String(s) => f64::parse(s),
            Value::Number(n) => n.as_f64(),
            _ => None,
        }
    }
}

/// The `"schema"` field; deserialization fails unless it reads `teichkit/1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Tag;

impl Serialize for Tag {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(SCHEMA)
    }
}

impl<'de> Deserialize<'de> for Tag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == SCHEMA {
            Ok(Tag)
        } else {
            Err(de::Error::custom(format!("unsupported schema {s:?}, expected {SCHEMA:?}")))
        }
    }
}

/// A scalar kept as raw JSON until the scalar type is chosen. Only numbers and
/// numeric strings are accepted.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RawScalar(pub Value);

impl<'de> Deserialize<'de> for RawScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        match &v {
            Value::Number(_) => Ok(RawScalar(v)),
            Value::String(s) if f64::parse(s).is_some_and(f64::is_finite) => Ok(RawScalar(v)),
            _ => Err(de::Error::custom(format!("not a scalar: {v}"))),
        }
    }
}

impl RawScalar {
    pub fn from_scalar<T: JsonScalar>(x: &T) -> Self {
        RawScalar(x.to_json())
    }
    pub fn get<T: JsonScalar>(&self, what: &str) -> Result<T, DecodeError> {
        T::from_json(&self.0).ok_or_else(|| DecodeError::Schema {
            line: 0,
            column: 0,
            message: format!("{what}: not a scalar: {}", self.0),
        })
    }
}

fn parse_list<'de, D, T>(d: D) -> std::result::Result<Vec<T>, D::Error>
where
    D: Deserializer<'de>,
    T: FromStr,
    T::Err: std::fmt::Display,
{
    let raw = Vec::<String>::deserialize(d)?;
    if raw.is_empty() {
        return Err(de::Error::custom("empty token list"));
    }
    raw.iter().map(|s| s.parse().map_err(de::Error::custom)).collect()
}

fn show_list<S: Serializer, T: ToString>(v: &[T], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|t| t.to_string()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeType {
    Internal,
    Open,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    #[serde(rename = "type")]
    pub kind: EdgeType,
    pub param: RawScalar,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub schema: Tag,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub vertices: Vec<Vertex>,
}

impl GraphJson {
    pub fn from_graph<T: JsonScalar + Param>(g: &FatGraph<T>) -> Self {
        GraphJson {
            schema: Tag,
            edges: g
                .edges()
                .map(|(id, k)| EdgeJson {
                    id: id.clone(),
                    kind: if k.is_open() { EdgeType::Open } else { EdgeType::Internal },
                    param: RawScalar::from_scalar(k.param()),
                })
                .collect(),
            vertices: g.vertices().to_vec(),
        }
    }

    pub fn to_graph<T: JsonScalar + Param>(&self) -> Result<FatGraph<T>, DecodeError> {
        let edges = self
            .edges
            .iter()
            .map(|e| {
                let p: T = e.param.get(&e.id)?;
                Ok((
                    e.id.clone(),
                    match e.kind {
                        EdgeType::Internal => EdgeKind::Internal { half_shear: p },
                        EdgeType::Open => EdgeKind::Open { half_pinning: p },
                    },
                ))
            })
            .collect::<Result<Vec<_>, DecodeError>>()?;
        Ok(FatGraph::new(edges, self.vertices.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub schema: Tag,
    #[serde(default)]
    pub negated: bool,
    #[serde(deserialize_with = "parse_list", serialize_with = "show_list")]
    pub tokens: Vec<Token>,
}

impl WordJson {
    pub fn from_word(w: &PathWord) -> Self {
        WordJson { schema: Tag, negated: w.is_negated(), tokens: w.tokens().to_vec() }
    }
    pub fn to_word(&self) -> Result<PathWord, DecodeError> {
        Ok(PathWord::new(self.negated, self.tokens.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoordJson {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: RawScalar,
}

pub fn assignment_to_json<T: JsonScalar>(z: &FGAssignment<T>) -> Vec<CoordJson> {
    z.values()
        .iter()
        .map(|(&(a, b, c), v)| CoordJson { a, b, c, value: RawScalar::from_scalar(v) })
        .collect()
}

pub fn assignment_from_json<T: JsonScalar>(n: usize, coords: &[CoordJson]) -> Result<FGAssignment<T>, DecodeError> {
    let mut values: BTreeMap<Bary, T> = BTreeMap::new();
    for c in coords {
        let v = c.value.get(&format!("Z({},{},{})", c.a, c.b, c.c))?;
        values.insert((c.a, c.b, c.c), v);
    }
    Ok(FGAssignment::new(n, values)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleJson {
    pub id: String,
    pub assignment: Vec<CoordJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideJson {
    pub tri: String,
    pub side: String,
}

impl SideJson {
    fn from_ref(s: &SideRef) -> Self {
        SideJson { tri: s.tri.clone(), side: s.side.label().to_string() }
    }
    fn to_ref(&self) -> Result<SideRef, DecodeError> {
        Ok(SideRef { tri: self.tri.clone(), side: self.side.parse::<Side>()? })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceJson {
    pub schema: Tag,
    pub n: usize,
    pub triangles: Vec<TriangleJson>,
    pub gluings: Vec<[SideJson; 2]>,
    #[serde(default)]
    pub open: Vec<SideJson>,
}

impl SurfaceJson {
    pub fn from_surface<T: JsonScalar>(s: &TriangulatedSurface<T>) -> Self {
        SurfaceJson {
            schema: Tag,
            n: s.n(),
            triangles: s
                .triangles()
                .iter()
                .map(|(id, z)| TriangleJson { id: id.clone(), assignment: assignment_to_json(z) })
                .collect(),
            gluings: s.gluings().iter().map(|(a, b)| [SideJson::from_ref(a), SideJson::from_ref(b)]).collect(),
            open: s.open_sides().iter().map(SideJson::from_ref).collect(),
        }
    }

    /// The `open` list, when present, must match the sides left unglued.
    pub fn to_surface<T: JsonScalar>(&self) -> Result<TriangulatedSurface<T>, DecodeError> {
        let mut tris = BTreeMap::new();
        for t in &self.triangles {
            if tris.insert(t.id.clone(), assignment_from_json(self.n, &t.assignment)?).is_some() {
                return Err(Error::InvalidSurface(format!("duplicate triangle {}", t.id)).into());
            }
        }
        let gluings = self
            .gluings
            .iter()
            .map(|[a, b]| Ok((a.to_ref()?, b.to_ref()?)))
            .collect::<Result<Vec<_>, DecodeError>>()?;
        let s = TriangulatedSurface::new(self.n, tris, gluings)?;
        if !self.open.is_empty() {
            let mut declared = self.open.iter().map(SideJson::to_ref).collect::<Result<Vec<_>, _>>()?;
            declared.sort();
            if declared != s.open_sides() {
                return Err(Error::InvalidSurface("open-side list does not match the gluings".into()).into());
            }
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangleWordJson {
    pub schema: Tag,
    #[serde(default)]
    pub negated: bool,
    #[serde(deserialize_with = "parse_triangle_tokens", serialize_with = "show_triangle_tokens")]
    pub tokens: TrianglePathWord,
}

fn parse_triangle_tokens<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<TrianglePathWord, D::Error> {
    let raw = Vec::<String>::deserialize(d)?;
    raw.join(" ").parse().map_err(de::Error::custom)
}

fn show_triangle_tokens<S: Serializer>(w: &TrianglePathWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    let body = TrianglePathWord { negated: false, tokens: w.tokens.clone() }.to_string();
    s.collect_seq(body.split(' '))
}

impl TriangleWordJson {
    pub fn from_word(w: &TrianglePathWord) -> Self {
        TriangleWordJson { schema: Tag, negated: w.negated, tokens: w.clone() }
    }
    pub fn to_word(&self) -> TrianglePathWord {
        TrianglePathWord { negated: self.negated, tokens: self.tokens.tokens.clone() }
    }
}

pub fn matrix_to_json<T: JsonScalar>(m: &Matrix<T>) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|x| x.to_json()).collect())).collect())
}

pub fn matrix_from_json<T: JsonScalar>(v: &Value) -> Option<Matrix<T>> {
    let rows = v.as_array()?;
    let rows: Vec<Vec<T>> = rows
        .iter()
        .map(|r| r.as_array()?.iter().map(T::from_json).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return None;
    }
    Some(Matrix::from_rows(rows))
}

/// Parses any tagged document.
pub fn from_str<D: DeserializeOwned>(text: &str) -> Result<D, DecodeError> {
    Ok(serde_json::from_str(text)?)
}

pub fn to_string<D: Serialize>(doc: &D) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}
