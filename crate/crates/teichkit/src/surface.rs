//! Triangulated surfaces built from triangles with Fock–Goncharov coordinates,
//! glued along sides, and the path matrices of words in transport matrices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::flags::{Bary, Side};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::snakes::{fg_keys, is_interior, s_matrix, transport, FGAssignment};

/// A side of a named triangle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SideRef {
    pub tri: String,
    pub side: Side,
}

impl SideRef {
    pub fn new(tri: &str, side: Side) -> Self {
        SideRef { tri: tri.to_string(), side }
    }
}

impl fmt::Display for SideRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tri, self.side)
    }
}

/// A coordinate of one triangle.
pub type VarRef = (String, Bary);

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum VarClass {
    /// Two side coordinates whose product is the amalgamated coordinate.
    Amalgamated(VarRef, VarRef),
    /// Coordinate on an open side.
    Free(VarRef),
    Interior(VarRef),
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangulatedSurface<T> {
    n: usize,
    triangles: BTreeMap<String, FGAssignment<T>>,
    gluings: Vec<(SideRef, SideRef)>,
}

impl<T: Scalar> TriangulatedSurface<T> {
    pub fn new(
        n: usize,
        triangles: BTreeMap<String, FGAssignment<T>>,
        gluings: Vec<(SideRef, SideRef)>,
    ) -> Result<Self> {
        if let Some((id, z)) = triangles.iter().find(|(_, z)| z.n() != n) {
            return Err(Error::InvalidSurface(format!("triangle {id} has n = {}, expected {n}", z.n())));
        }
        let mut used = BTreeSet::new();
        for (a, b) in &gluings {
            for s in [a, b] {
                if !triangles.contains_key(&s.tri) {
                    return Err(Error::UnknownTriangle(s.tri.clone()));
                }
                if !used.insert(s.clone()) {
                    return Err(Error::InvalidSurface(format!("side {s} glued twice")));
                }
            }
        }
        Ok(TriangulatedSurface { n, triangles, gluings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn triangles(&self) -> &BTreeMap<String, FGAssignment<T>> {
        &self.triangles
    }

    pub fn triangle(&self, id: &str) -> Result<&FGAssignment<T>> {
        self.triangles.get(id).ok_or_else(|| Error::UnknownTriangle(id.to_string()))
    }

    pub fn gluings(&self) -> &[(SideRef, SideRef)] {
        &self.gluings
    }

    pub fn open_sides(&self) -> Vec<SideRef> {
        let glued: BTreeSet<&SideRef> = self.gluings.iter().flat_map(|(a, b)| [a, b]).collect();
        self.triangles
            .keys()
            .flat_map(|t| Side::ALL.iter().map(move |s| SideRef::new(t, *s)))
            .filter(|s| !glued.contains(s))
            .collect()
    }

    /// Gluing pairs vertex `k` of one side with vertex `n − k` of the other.
    pub fn amalgamation_classes(&self) -> Vec<VarClass> {
        let n = self.n;
        let mut out = Vec::new();
        for (a, b) in &self.gluings {
            for k in 1..n {
                out.push(VarClass::Amalgamated(
                    (a.tri.clone(), a.side.vertex(n, k)),
                    (b.tri.clone(), b.side.vertex(n, n - k)),
                ));
            }
        }
        for s in self.open_sides() {
            for k in 1..n {
                out.push(VarClass::Free((s.tri.clone(), s.side.vertex(n, k))));
            }
        }
        for t in self.triangles.keys() {
            for key in fg_keys(n).into_iter().filter(|k| is_interior(*k)) {
                out.push(VarClass::Interior((t.clone(), key)));
            }
        }
        out
    }

    pub fn value(&self, v: &VarRef) -> Result<&T> {
        Ok(self.triangle(&v.0)?.get(v.1))
    }

    pub fn set_value(&self, v: &VarRef, x: T) -> Result<Self> {
        let mut s = self.clone();
        let z = s.triangle(&v.0)?.with(v.1, x)?;
        s.triangles.insert(v.0.clone(), z);
        Ok(s)
    }

    /// Multiplies one coordinate of an amalgamated pair by `t` and the other by `1/t`.
    pub fn rescale_pair(&self, class: &VarClass, t: &T) -> Result<Self> {
        let VarClass::Amalgamated(x, y) = class else {
            return Err(Error::NotGlued(format!("{class:?}")));
        };
        let vx = self.value(x)?.clone() * t.clone();
        let s = self.set_value(x, vx)?;
        let vy = s.value(y)?.clone() / t.clone();
        s.set_value(y, vy)
    }

    pub fn glue(&self, a: SideRef, b: SideRef) -> Result<Self> {
        let mut g = self.gluings.clone();
        g.push((a, b));
        TriangulatedSurface::new(self.n, self.triangles.clone(), g)
    }

    fn gluing_index(&self, a: &SideRef, b: &SideRef) -> Result<usize> {
        self.gluings
            .iter()
            .position(|(x, y)| (x == a && y == b) || (x == b && y == a))
            .ok_or_else(|| Error::NotGlued(format!("{a}-{b}")))
    }

    /// Removes the gluing `a`–`b`. `split[k−1]` replaces the pair (vertex `k` of `a`,
    /// vertex `n−k` of `b`) and must have the same product as the current pair.
    pub fn unamalgamate(&self, a: &SideRef, b: &SideRef, split: &[(T, T)]) -> Result<Self> {
        let idx = self.gluing_index(a, b)?;
        let n = self.n;
        if split.len() != n - 1 {
            return Err(Error::InvalidSurface(format!("{} split values for n = {n}", split.len())));
        }
        let mut s = self.clone();
        s.gluings.remove(idx);
        for (k, (x, y)) in (1..n).zip(split) {
            let va = (a.tri.clone(), a.side.vertex(n, k));
            let vb = (b.tri.clone(), b.side.vertex(n, n - k));
            let current = self.value(&va)?.clone() * self.value(&vb)?.clone();
            if x.clone() * y.clone() != current {
                return Err(Error::InvalidSurface(format!("split of {a}-{b} at k = {k} changes the product")));
            }
            s = s.set_value(&va, x.clone())?.set_value(&vb, y.clone())?;
        }
        Ok(s)
    }

    pub fn gluing_set(&self) -> BTreeSet<(SideRef, SideRef)> {
        self.gluings.iter().map(|(a, b)| if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) }).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathToken {
    T { tri: String, which: usize, inverted: bool },
    S,
}

/// Alternating product of transport matrices and `S`, e.g. `"-S T3(r) S T2(r) S"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrianglePathWord {
    pub negated: bool,
    pub tokens: Vec<PathToken>,
}

impl FromStr for TrianglePathWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (negated, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let mut tokens = Vec::new();
        for tok in body.split_whitespace() {
            if tok == "S" {
                tokens.push(PathToken::S);
                continue;
            }
            let (t, inverted) = match tok.strip_suffix("^-1") {
                Some(t) => (t, true),
                None => (tok, false),
            };
            let bad = || Error::InvalidWord(format!("bad token {tok:?}"));
            let rest = t.strip_prefix('T').ok_or_else(bad)?;
            let (idx, tri) = rest.split_once('(').ok_or_else(bad)?;
            let tri = tri.strip_suffix(')').filter(|x| !x.is_empty()).ok_or_else(bad)?;
            let which: usize = idx.parse().map_err(|_| bad())?;
            if !(1..=3).contains(&which) {
                return Err(bad());
            }
            tokens.push(PathToken::T { tri: tri.to_string(), which, inverted });
        }
        if tokens.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        Ok(TrianglePathWord { negated, tokens })
    }
}

impl fmt::Display for TrianglePathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "-")?;
        }
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            match t {
                PathToken::S => write!(f, "S")?,
                PathToken::T { tri, which, inverted } => {
                    write!(f, "T{which}({tri})")?;
                    if *inverted {
                        write!(f, "^-1")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Product of the word's matrices; inverses are taken as adjugates, so the result
/// is a projective representative.
pub fn path_matrix<T: Scalar>(surf: &TriangulatedSurface<T>, w: &TrianglePathWord) -> Result<Matrix<T>> {
    let n = surf.n();
    let mut m = Matrix::identity(n);
    for t in &w.tokens {
        let f = match t {
            PathToken::S => s_matrix(n),
            PathToken::T { tri, which, inverted } => {
                let m = transport(surf.triangle(tri)?, *which)?;
                if *inverted {
                    m.adjugate()
                } else {
                    m
                }
            }
        };
        m = &m * &f;
    }
    Ok(if w.negated { -m } else { m })
}

fn word(s: &str) -> TrianglePathWord {
    s.parse().expect("builder word")
}

fn tris<T: Scalar>(items: Vec<(&str, FGAssignment<T>)>) -> BTreeMap<String, FGAssignment<T>> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn sr(tri: &str, side: Side) -> SideRef {
    SideRef::new(tri, side)
}

/// Left and right triangles glued along their sides `12`; `M = T₁⁽ᴸ⁾ S T₂⁽ᴿ⁾`.
pub fn two_triangles<T: Scalar>(
    left: FGAssignment<T>,
    right: FGAssignment<T>,
) -> Result<(TriangulatedSurface<T>, TrianglePathWord)> {
    let n = left.n();
    let s = TriangulatedSurface::new(n, tris(vec![("L", left), ("R", right)]), vec![(sr("L", Side::S12), sr("R", Side::S12))])?;
    Ok((s, word("T1(L) S T2(R)")))
}

/// Named words of a surface builder.
pub type Words = BTreeMap<String, TrianglePathWord>;

fn words(items: &[(&str, &str)]) -> Words {
    items.iter().map(|(k, w)| (k.to_string(), word(w))).collect()
}

/// Cylinder with two cusps on one boundary: top and bottom triangles glued along
/// `t31–b23` and `t23–b31`, sides `12` open. Words `Y`, `B`, `R`.
pub fn cylinder_two_cusps<T: Scalar>(top: FGAssignment<T>, bottom: FGAssignment<T>) -> Result<(TriangulatedSurface<T>, Words)> {
    let n = top.n();
    let s = TriangulatedSurface::new(
        n,
        tris(vec![("t", top), ("b", bottom)]),
        vec![(sr("t", Side::S31), sr("b", Side::S23)), (sr("t", Side::S23), sr("b", Side::S31))],
    )?;
    Ok((s, words(&[("Y", "S T2(b) S T1(t)"), ("B", "T2(t) S T1(b) S"), ("R", "T1(t)^-1 S T3(b) S T2(t)^-1")])))
}

/// The same cylinder with the top triangle split into two copies `l` and `r`
/// carrying one assignment, each glued to the bottom along one side.
pub fn cylinder_three_triangles<T: Scalar>(top: FGAssignment<T>, bottom: FGAssignment<T>) -> Result<(TriangulatedSurface<T>, Words)> {
    let n = top.n();
    let s = TriangulatedSurface::new(
        n,
        tris(vec![("l", top.clone()), ("r", top), ("b", bottom)]),
        vec![(sr("l", Side::S31), sr("b", Side::S23)), (sr("r", Side::S23), sr("b", Side::S31))],
    )?;
    Ok((s, words(&[("Y", "S T2(b) S T1(l)"), ("B", "T2(r) S T1(b) S"), ("R", "T1(l)^-1 S T3(b) S T2(r)^-1")])))
}

/// Cylinder with the open sides `t12` and `b12` glued as well.
pub fn closed_two_triangles<T: Scalar>(top: FGAssignment<T>, bottom: FGAssignment<T>) -> Result<TriangulatedSurface<T>> {
    let (s, _) = cylinder_two_cusps(top, bottom)?;
    s.glue(sr("t", Side::S12), sr("b", Side::S12))
}

/// Four-holed sphere from triangles `l, r, d, c`; loop words `O, B, G, P`.
pub fn four_holed_sphere_fg<T: Scalar>(
    l: FGAssignment<T>,
    r: FGAssignment<T>,
    d: FGAssignment<T>,
    c: FGAssignment<T>,
) -> Result<(TriangulatedSurface<T>, Words)> {
    let n = l.n();
    let s = TriangulatedSurface::new(
        n,
        tris(vec![("l", l), ("r", r), ("d", d), ("c", c)]),
        vec![
            (sr("r", Side::S12), sr("r", Side::S31)),
            (sr("r", Side::S23), sr("c", Side::S12)),
            (sr("c", Side::S23), sr("d", Side::S23)),
            (sr("d", Side::S12), sr("d", Side::S31)),
            (sr("c", Side::S31), sr("l", Side::S23)),
            (sr("l", Side::S12), sr("l", Side::S31)),
        ],
    )?;
    Ok((
        s,
        words(&[
            ("O", "-S T3(r) S T2(r) S"),
            ("B", "-T2(c) S T3(d) S T2(d) S T2(c)^-1"),
            ("G", "-T1(c)^-1 S T3(l) S T2(l) S T1(c)"),
            (
                "P",
                "T1(c)^-1 S T2(l)^-1 S T3(l)^-1 S T3(c)^-1 S T2(d)^-1 S T3(d)^-1 S T2(c)^-1 S T2(r)^-1 S T3(r)^-1 S",
            ),
        ]),
    ))
}
