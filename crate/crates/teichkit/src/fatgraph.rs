//! Fat (ribbon) graphs with shear coordinates and the holonomy of path words.
//!
//! Shears are stored as half-exponentials `λ = e^{s/2}` and pinnings as
//! `κ = e^{k/2}`, so every generator entry is a Laurent monomial in the stored
//! parameters and rational inputs give exact results.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::{mat2, Mat2};
use crate::scalar::{Ring, Scalar};

/// Parameter types accepted on edges. Numeric scalars must be positive; symbolic
/// values are always admissible.
pub trait Param: Ring {
    fn is_admissible(&self) -> bool;
}

impl<T: Scalar> Param for T {
    fn is_admissible(&self) -> bool {
        self.is_positive()
    }
}

impl Param for LaurentPoly {
    fn is_admissible(&self) -> bool {
        !self.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EdgeKind<T> {
    Internal { half_shear: T },
    Open { half_pinning: T },
}

impl<T> EdgeKind<T> {
    pub fn param(&self) -> &T {
        match self {
            EdgeKind::Internal { half_shear } => half_shear,
            EdgeKind::Open { half_pinning } => half_pinning,
        }
    }
    pub fn is_open(&self) -> bool {
        matches!(self, EdgeKind::Open { .. })
    }
}

/// One end of an edge. For open edges, end 1 is the cusp.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: String,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: &str, end: u8) -> Self {
        HalfEdge { edge: edge.to_string(), end }
    }
    fn twin(&self) -> Self {
        HalfEdge { edge: self.edge.clone(), end: 1 - self.end }
    }
}

/// A vertex with its half-edges in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub rotation: Vec<HalfEdge>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FatGraph<T> {
    edges: BTreeMap<String, EdgeKind<T>>,
    vertices: Vec<Vertex>,
}

impl<T: Param> FatGraph<T> {
    /// Builds a graph. An empty vertex list gives an edge table without ribbon
    /// structure, which is enough to evaluate words.
    pub fn new(edges: Vec<(String, EdgeKind<T>)>, vertices: Vec<Vertex>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (id, kind) in edges {
            if !kind.param().is_admissible() {
                return Err(Error::NonpositiveParameter(id));
            }
            if map.insert(id.clone(), kind).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate edge {id:?}")));
            }
        }
        let g = FatGraph { edges: map, vertices };
        if !g.vertices.is_empty() {
            g.check_ribbon()?;
        }
        Ok(g)
    }

    fn check_ribbon(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if v.rotation.len() != 3 {
                return Err(Error::InvalidGraph(format!("vertex {:?} is not trivalent", v.id)));
            }
            for h in &v.rotation {
                let kind = self.edges.get(&h.edge).ok_or_else(|| Error::UnknownEdge(h.edge.clone()))?;
                if h.end > 1 || (kind.is_open() && h.end == 1) {
                    return Err(Error::InvalidGraph(format!("bad end {} of edge {:?}", h.end, h.edge)));
                }
                if !seen.insert(h.clone()) {
                    return Err(Error::InvalidGraph(format!("half-edge {h:?} used twice")));
                }
            }
        }
        for (id, kind) in &self.edges {
            let ends = if kind.is_open() { 1 } else { 2 };
            if seen.iter().filter(|h| &h.edge == id).count() != ends {
                return Err(Error::InvalidGraph(format!("edge {id:?} is not fully attached")));
            }
        }
        Ok(())
    }

    pub fn edge(&self, id: &str) -> Result<&EdgeKind<T>> {
        self.edges.get(id).ok_or_else(|| Error::UnknownEdge(id.to_string()))
    }

    pub fn edges(&self) -> impl Iterator<Item = (&String, &EdgeKind<T>)> {
        self.edges.iter()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Boundary cycles, each as the list of half-edges traversed. Uses the
    /// successor of the twin in the rotation at its vertex; a cusp end turns back.
    pub fn faces(&self) -> Vec<Vec<HalfEdge>> {
        let mut next_at: BTreeMap<HalfEdge, HalfEdge> = BTreeMap::new();
        for v in &self.vertices {
            let k = v.rotation.len();
            for i in 0..k {
                next_at.insert(v.rotation[i].clone(), v.rotation[(i + 1) % k].clone());
            }
        }
        let darts: Vec<HalfEdge> = self
            .edges
            .keys()
            .flat_map(|e| [HalfEdge::new(e, 0), HalfEdge::new(e, 1)])
            .collect();
        let mut visited = BTreeSet::new();
        let mut faces = Vec::new();
        for start in &darts {
            if visited.contains(start) {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start.clone();
            while visited.insert(d.clone()) {
                face.push(d.clone());
                let t = d.twin();
                d = next_at.get(&t).cloned().unwrap_or(t);
            }
            faces.push(face);
        }
        faces
    }

    /// Checks the face count against `s` and, for closed graphs of declared genus,
    /// the edge count `6g − 6 + 3s`.
    pub fn validate_topology(&self, genus: Option<u32>, boundaries: usize) -> Result<()> {
        let f = self.faces().len();
        if f != boundaries {
            return Err(Error::InvalidGraph(format!("{f} faces, {boundaries} boundaries declared")));
        }
        if let Some(g) = genus {
            if self.edges.values().all(|k| !k.is_open()) {
                let expected = 6 * g as i64 - 6 + 3 * boundaries as i64;
                if self.edges.len() as i64 != expected {
                    return Err(Error::InvalidGraph(format!(
                        "{} edges, expected {expected}",
                        self.edges.len()
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Token {
    Rt,
    Lt,
    Edge(String),
    EdgeInv(String),
    Kappa,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Rt => write!(f, "R"),
            Token::Lt => write!(f, "L"),
            Token::Kappa => write!(f, "K"),
            Token::Edge(e) => write!(f, "X({e})"),
            Token::EdgeInv(e) => write!(f, "X({e})^-1"),
        }
    }
}

impl FromStr for Token {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "R" => return Ok(Token::Rt),
            "L" => return Ok(Token::Lt),
            "K" => return Ok(Token::Kappa),
            _ => {}
        }
        let (body, inv) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let id = body
            .strip_prefix("X(")
            .and_then(|r| r.strip_suffix(')'))
            .filter(|id| !id.is_empty() && !id.contains(['(', ')', ' ']))
            .ok_or_else(|| Error::InvalidWord(format!("bad token {s:?}")))?;
        Ok(if inv { Token::EdgeInv(id.to_string()) } else { Token::Edge(id.to_string()) })
    }
}

/// A signed product of generators, written in the order the matrices are multiplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWord {
    negated: bool,
    tokens: Vec<Token>,
}

impl PathWord {
    pub fn new(negated: bool, tokens: Vec<Token>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if tokens.iter().filter(|t| **t == Token::Kappa).count() > 1 {
            return Err(Error::InvalidWord("more than one K".into()));
        }
        Ok(PathWord { negated, tokens })
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn is_negated(&self) -> bool {
        self.negated
    }

    pub fn ends_with_kappa(&self) -> bool {
        self.tokens.last() == Some(&Token::Kappa)
    }

    /// Product of two words.
    pub fn concat(&self, other: &PathWord) -> Result<PathWord> {
        let mut tokens = self.tokens.clone();
        tokens.extend(other.tokens.iter().cloned());
        PathWord::new(self.negated ^ other.negated, tokens)
    }

    /// Word for the inverse matrix, using `R⁻¹ = −L`, `L⁻¹ = −R`.
    pub fn inverse(&self) -> Result<PathWord> {
        let mut negated = self.negated;
        let mut tokens = Vec::with_capacity(self.tokens.len());
        for t in self.tokens.iter().rev() {
            tokens.push(match t {
                Token::Rt => {
                    negated = !negated;
                    Token::Lt
                }
                Token::Lt => {
                    negated = !negated;
                    Token::Rt
                }
                Token::Edge(e) => Token::EdgeInv(e.clone()),
                Token::EdgeInv(e) => Token::Edge(e.clone()),
                Token::Kappa => return Err(Error::InvalidWord("K is not invertible".into())),
            });
        }
        PathWord::new(negated, tokens)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = &str> {
        self.tokens.iter().filter_map(|t| match t {
            Token::Edge(e) | Token::EdgeInv(e) => Some(e.as_str()),
            _ => None,
        })
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-")?;
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl FromStr for PathWord {
    type Err = Error;
    /// Space-separated tokens with an optional leading `-`, e.g. `"-R X(s2) R X(s3)"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negated, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let tokens = body.split_whitespace().map(Token::from_str).collect::<Result<Vec<_>>>()?;
        PathWord::new(negated, tokens)
    }
}

pub fn right<T: Ring>() -> Mat2<T> {
    mat2(T::one(), T::one(), -T::one(), T::zero())
}

pub fn left<T: Ring>() -> Mat2<T> {
    mat2(T::zero(), T::one(), -T::one(), -T::one())
}

pub fn kappa<T: Ring>() -> Mat2<T> {
    mat2(T::zero(), T::zero(), -T::one(), T::zero())
}

/// Edge matrix `X = ((0, −λ), (λ⁻¹, 0))`.
pub fn edge_matrix<T: Param>(lambda: &T) -> Result<Mat2<T>> {
    if !lambda.is_admissible() {
        return Err(Error::NonpositiveParameter(format!("{lambda:?}")));
    }
    let inv = lambda.try_inv().ok_or_else(|| Error::NonpositiveParameter(format!("{lambda:?}")))?;
    Ok(mat2(T::zero(), -lambda.clone(), inv, T::zero()))
}

/// Matrix of one token; `param` is the edge's λ or κ and is ignored for R, L, K.
pub fn generator<T: Param>(token: &Token, param: Option<&T>) -> Result<Mat2<T>> {
    let need = || param.ok_or_else(|| Error::InvalidWord(format!("{token} needs a parameter")));
    Ok(match token {
        Token::Rt => right(),
        Token::Lt => left(),
        Token::Kappa => kappa(),
        Token::Edge(_) => edge_matrix(need()?)?,
        Token::EdgeInv(_) => {
            let x = edge_matrix(need()?)?;
            mat2(T::zero(), -x.get(0, 1).clone(), -x.get(1, 0).clone(), T::zero())
        }
    })
}

/// Holonomy of a word: the product of its generators in written order.
pub fn evaluate<T: Param>(g: &FatGraph<T>, w: &PathWord) -> Result<Mat2<T>> {
    let mut m = Mat2::identity(2);
    for t in w.tokens() {
        let p = match t {
            Token::Edge(e) | Token::EdgeInv(e) => Some(g.edge(e)?.param()),
            _ => None,
        };
        m = &m * &generator(t, p)?;
    }
    Ok(if w.is_negated() { -m } else { m })
}

pub fn trace<T: Ring>(m: &Mat2<T>) -> T {
    m.trace()
}

/// `Tr(m·K) = −m₁₂`.
pub fn trace_k<T: Ring>(m: &Mat2<T>) -> T {
    -m.get(0, 1).clone()
}

pub fn det2<T: Ring>(m: &Mat2<T>) -> T {
    m.get(0, 0).clone() * m.get(1, 1).clone() - m.get(0, 1).clone() * m.get(1, 0).clone()
}

fn internal<T>(id: &str, v: T) -> (String, EdgeKind<T>) {
    (id.to_string(), EdgeKind::Internal { half_shear: v })
}

fn word(s: &str) -> PathWord {
    s.parse().expect("builder word")
}

fn vertex(id: &str, rot: [(&str, u8); 3]) -> Vertex {
    Vertex { id: id.to_string(), rotation: rot.iter().map(|(e, end)| HalfEdge::new(e, *end)).collect() }
}

/// Theta graph with edges `s1, s2, s3` and the three boundary loops.
pub fn pair_of_pants<T: Param>(l1: T, l2: T, l3: T) -> Result<(FatGraph<T>, [PathWord; 3])> {
    let g = FatGraph::new(
        vec![internal("s1", l1), internal("s2", l2), internal("s3", l3)],
        vec![
            vertex("u", [("s1", 0), ("s2", 0), ("s3", 0)]),
            vertex("v", [("s1", 1), ("s3", 1), ("s2", 1)]),
        ],
    )?;
    Ok((g, [word("-R X(s2) R X(s3)"), word("-X(s3) R X(s1) R"), word("L X(s1) R X(s2) L")]))
}

/// Four-holed sphere: spokes `s1..s3` from a central vertex, each ending in a loop `p_i`.
pub fn four_holed_sphere<T: Param>(ls: [T; 3], lp: [T; 3]) -> Result<(FatGraph<T>, [PathWord; 4])> {
    let [s1, s2, s3] = ls;
    let [p1, p2, p3] = lp;
    let g = FatGraph::new(
        vec![
            internal("s1", s1),
            internal("s2", s2),
            internal("s3", s3),
            internal("p1", p1),
            internal("p2", p2),
            internal("p3", p3),
        ],
        vec![
            vertex("c", [("s1", 0), ("s3", 0), ("s2", 0)]),
            vertex("v1", [("s1", 1), ("p1", 0), ("p1", 1)]),
            vertex("v2", [("s2", 1), ("p2", 0), ("p2", 1)]),
            vertex("v3", [("s3", 1), ("p3", 0), ("p3", 1)]),
        ],
    )?;
    let g1 = word("X(s1) R X(p1) R X(s1)");
    let g2 = word("-R X(s2) R X(p2) R X(s2) L");
    let g3 = word("-L X(s3) R X(p3) R X(s3) R");
    let g4 = g1.concat(&g2)?.concat(&g3)?.inverse()?;
    Ok((g, [g1, g2, g3, g4]))
}

/// Fricke–Vogt coordinates `x₁ = Tr(M₂M₃)`, `x₂ = Tr(M₁M₃)`, `x₃ = Tr(M₁M₂)`, `Gᵢ = Tr(Mᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrickeVogt<T> {
    pub x: [T; 3],
    pub g: [T; 4],
}

pub fn fricke_coordinates<T: Param>(graph: &FatGraph<T>, loops: &[PathWord; 4]) -> Result<FrickeVogt<T>> {
    let m = loops.iter().map(|w| evaluate(graph, w)).collect::<Result<Vec<_>>>()?;
    let prod = &(&(&m[0] * &m[1]) * &m[2]) * &m[3];
    match prod.scalar_value() {
        Some(c) if c == T::one() || c == -T::one() => {}
        _ => return Err(Error::ProductNotIdentity),
    }
    Ok(FrickeVogt {
        x: [(&m[1] * &m[2]).trace(), (&m[0] * &m[2]).trace(), (&m[0] * &m[1]).trace()],
        g: [m[0].trace(), m[1].trace(), m[2].trace(), m[3].trace()],
    })
}

/// Left side of the Fricke relation (equal to 4 on the character variety).
pub fn fricke_cubic<T: Ring>(fv: &FrickeVogt<T>) -> T {
    let [x1, x2, x3] = fv.x.clone();
    let [g1, g2, g3, g4] = fv.g.clone();
    x1.clone() * x2.clone() * x3.clone() + x1.clone() * x1.clone() + x2.clone() * x2.clone() + x3.clone() * x3.clone()
        - (g4.clone() * g1.clone() + g2.clone() * g3.clone()) * x1
        - (g4.clone() * g2.clone() + g1.clone() * g3.clone()) * x2
        - (g4.clone() * g3.clone() + g2.clone() * g1.clone()) * x3
        + g1.clone() * g1.clone()
        + g2.clone() * g2.clone()
        + g3.clone() * g3.clone()
        + g4.clone() * g4.clone()
        + g1 * g2 * g3 * g4
}
