//! Upper half-plane geometry: Möbius maps, their classification and fixed points,
//! cross ratios, horocycles, distances and translation lengths.
//!
//! Maps are kept unnormalized (any positive determinant), so the exact predicates
//! below are written to be homogeneous in the matrix entries.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{mat2, Mat2};
use crate::scalar::Scalar;

/// A point of ℝ ∪ {∞}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundaryPoint<T> {
    Finite(T),
    Infinity,
}

impl<T: Scalar> BoundaryPoint<T> {
    pub fn finite(&self) -> Option<&T> {
        match self {
            BoundaryPoint::Finite(x) => Some(x),
            BoundaryPoint::Infinity => None,
        }
    }

    /// Homogeneous coordinates: `x ↦ (x, 1)`, `∞ ↦ (1, 0)`.
    fn homogeneous(&self) -> (T, T) {
        match self {
            BoundaryPoint::Finite(x) => (x.clone(), T::one()),
            BoundaryPoint::Infinity => (T::one(), T::zero()),
        }
    }

    fn from_homogeneous(u: T, v: T) -> Self {
        if v.is_zero() {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(u / v)
        }
    }
}

impl<T: fmt::Display> fmt::Display for BoundaryPoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A point `x + iy`; interior when `y > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }
    pub fn is_interior(&self) -> bool {
        self.y.is_positive()
    }
    fn norm_sq(&self) -> T {
        self.x.square() + self.y.square()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geodesic<T> {
    Vertical { x: T },
    Arc { center: T, radius: T },
}

impl<T: Scalar> Geodesic<T> {
    /// The geodesic joining two distinct boundary points.
    pub fn through(p: &BoundaryPoint<T>, q: &BoundaryPoint<T>) -> Result<Self> {
        match (p, q) {
            (BoundaryPoint::Finite(a), BoundaryPoint::Finite(b)) => {
                if a == b {
                    return Err(Error::DegenerateInput("geodesic endpoints coincide".into()));
                }
                let two = T::from_i64(2);
                Ok(Geodesic::Arc {
                    center: (a.clone() + b.clone()) / two.clone(),
                    radius: (a.clone() - b.clone()).abs() / two,
                })
            }
            (BoundaryPoint::Finite(x), BoundaryPoint::Infinity)
            | (BoundaryPoint::Infinity, BoundaryPoint::Finite(x)) => Ok(Geodesic::Vertical { x: x.clone() }),
            _ => Err(Error::DegenerateInput("geodesic endpoints coincide".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Horocycle<T> {
    AtInfinity { height: T },
    Tangent { base: T, diameter: T },
}

impl<T: Scalar> Horocycle<T> {
    pub fn base(&self) -> BoundaryPoint<T> {
        match self {
            Horocycle::AtInfinity { .. } => BoundaryPoint::Infinity,
            Horocycle::Tangent { base, .. } => BoundaryPoint::Finite(base.clone()),
        }
    }

    /// Image under a Möbius map; Euclidean sizes scale by the derivative at the base point.
    pub fn image(&self, m: &MobiusMap<T>) -> Self {
        let det = m.det();
        match self {
            Horocycle::Tangent { base, diameter } => {
                let den = m.c.clone() * base.clone() + m.d.clone();
                if den.is_zero() {
                    Horocycle::AtInfinity {
                        height: det / (m.c.square() * diameter.clone()),
                    }
                } else {
                    Horocycle::Tangent {
                        base: (m.a.clone() * base.clone() + m.b.clone()) / den.clone(),
                        diameter: diameter.clone() * det / den.square(),
                    }
                }
            }
            Horocycle::AtInfinity { height } => {
                if m.c.is_zero() {
                    Horocycle::AtInfinity {
                        height: height.clone() * det / m.d.square(),
                    }
                } else {
                    Horocycle::Tangent {
                        base: m.a.clone() / m.c.clone(),
                        diameter: det / (m.c.square() * height.clone()),
                    }
                }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Hyperbolic,
    Parabolic,
    Elliptic,
    Identity,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FixedPoints<T> {
    /// One (parabolic) or two (hyperbolic) boundary points, finite ones ascending, ∞ last.
    Boundary(Vec<BoundaryPoint<T>>),
    Interior(Point<T>),
}

/// `z ↦ (az+b)/(cz+d)` with `ad − bc > 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MobiusMap<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Scalar> MobiusMap<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        let m = MobiusMap { a, b, c, d };
        if !m.det().is_positive() {
            return Err(Error::NonpositiveDeterminant);
        }
        Ok(m)
    }

    /// Matrix entries in row order; a nonpositive determinant is rejected.
    pub fn from_matrix(m: &Mat2<T>) -> Result<Self> {
        Self::new(m.get(0, 0).clone(), m.get(0, 1).clone(), m.get(1, 0).clone(), m.get(1, 1).clone())
    }

    pub fn identity() -> Self {
        MobiusMap { a: T::one(), b: T::zero(), c: T::zero(), d: T::one() }
    }

    pub fn matrix(&self) -> Mat2<T> {
        mat2(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn compose(&self, other: &Self) -> Self {
        let m = &self.matrix() * &other.matrix();
        MobiusMap { a: m.get(0, 0).clone(), b: m.get(0, 1).clone(), c: m.get(1, 0).clone(), d: m.get(1, 1).clone() }
    }

    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// Equality as maps, i.e. up to a nonzero scalar.
    pub fn same_map(&self, other: &Self) -> bool {
        self.matrix().proj_eq(&other.matrix())
    }

    pub fn apply_boundary(&self, z: &BoundaryPoint<T>) -> BoundaryPoint<T> {
        let (u, v) = z.homogeneous();
        BoundaryPoint::from_homogeneous(
            self.a.clone() * u.clone() + self.b.clone() * v.clone(),
            self.c.clone() * u + self.d.clone() * v,
        )
    }

    /// Image of an interior point: `(az+b)(c z̄+d)/|cz+d|²`.
    pub fn apply(&self, z: &Point<T>) -> Point<T> {
        let nx = self.a.clone() * z.x.clone() + self.b.clone();
        let ny = self.a.clone() * z.y.clone();
        let dx = self.c.clone() * z.x.clone() + self.d.clone();
        let dy = self.c.clone() * z.y.clone();
        let den = dx.square() + dy.square();
        Point {
            x: (nx.clone() * dx.clone() + ny.clone() * dy.clone()) / den.clone(),
            y: (ny * dx - nx * dy) / den,
        }
    }

    /// Discriminant `Tr² − 4·det`, whose sign decides the type.
    pub fn discriminant(&self) -> T {
        self.trace().square() - T::from_i64(4) * self.det()
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    pub fn classify(&self) -> Classification {
        if self.is_scalar() {
            return Classification::Identity;
        }
        let disc = self.discriminant();
        if disc.is_positive() {
            Classification::Hyperbolic
        } else if disc.is_zero() {
            Classification::Parabolic
        } else {
            Classification::Elliptic
        }
    }

    pub fn fixed_points(&self) -> Result<FixedPoints<T>> {
        if self.is_scalar() {
            return Err(Error::IdentityMap);
        }
        let disc = self.discriminant();
        let two = T::from_i64(2);
        let amd = self.a.clone() - self.d.clone();
        if self.c.is_zero() {
            if amd.is_zero() {
                return Ok(FixedPoints::Boundary(vec![BoundaryPoint::Infinity]));
            }
            let x = self.b.clone() / (self.d.clone() - self.a.clone());
            return Ok(FixedPoints::Boundary(vec![BoundaryPoint::Finite(x), BoundaryPoint::Infinity]));
        }
        let den = two * self.c.clone();
        if disc.is_negative() {
            let root = (-disc).sqrt().ok_or(Error::IrrationalRoot)?;
            return Ok(FixedPoints::Interior(Point { x: amd / den.clone(), y: root / den.abs() }));
        }
        if disc.is_zero() {
            return Ok(FixedPoints::Boundary(vec![BoundaryPoint::Finite(amd / den)]));
        }
        let root = disc.sqrt().ok_or(Error::IrrationalRoot)?;
        let mut xs = [(amd.clone() - root.clone()) / den.clone(), (amd + root) / den];
        if xs[0] > xs[1] {
            xs.swap(0, 1);
        }
        Ok(FixedPoints::Boundary(xs.into_iter().map(BoundaryPoint::Finite).collect()))
    }

    /// Axis endpoints of a hyperbolic map as `(repelling, attracting)`.
    pub fn axis(&self) -> Result<(BoundaryPoint<T>, BoundaryPoint<T>)> {
        if self.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic);
        }
        let FixedPoints::Boundary(pts) = self.fixed_points()? else {
            return Err(Error::NotHyperbolic);
        };
        let (p, q) = (pts[0].clone(), pts[1].clone());
        // |γ'(x)| = det/(cx+d)² at a finite fixed point; ∞ repels when |d| > |a|.
        let expanding = |x: &BoundaryPoint<T>| match x {
            BoundaryPoint::Finite(x) => {
                let s = self.c.clone() * x.clone() + self.d.clone();
                self.det() > s.square()
            }
            BoundaryPoint::Infinity => self.d.square() > self.a.square(),
        };
        if expanding(&p) {
            Ok((p, q))
        } else {
            Ok((q, p))
        }
    }

    /// Translation length (float), from `2cosh(l/2) = |Tr|/√det`.
    pub fn translation_length(&self) -> Result<f64> {
        if self.classify() != Classification::Hyperbolic {
            return Err(Error::NotHyperbolic);
        }
        let t = self.trace().to_f64().abs() / self.det().to_f64().sqrt();
        Ok(2.0 * (t / 2.0).acosh())
    }
}

/// `((p−r)/(p−s))·((q−s)/(q−r))`, extended to ∞ by continuity.
pub fn cross_ratio<T: Scalar>(
    p: &BoundaryPoint<T>,
    q: &BoundaryPoint<T>,
    r: &BoundaryPoint<T>,
    s: &BoundaryPoint<T>,
) -> Result<T> {
    let pts = [p.homogeneous(), q.homogeneous(), r.homogeneous(), s.homogeneous()];
    let br = |i: usize, j: usize| pts[i].0.clone() * pts[j].1.clone() - pts[i].1.clone() * pts[j].0.clone();
    for i in 0..4 {
        for j in i + 1..4 {
            if br(i, j).is_zero() {
                return Err(Error::DegenerateInput("cross ratio of coincident points".into()));
            }
        }
    }
    Ok(br(0, 2) * br(1, 3) / (br(0, 3) * br(1, 2)))
}

/// Hyperbolic distance, via `tanh(d/2) = |P−Q|/|P−Q̄|`.
pub fn distance<T: Scalar>(p: &Point<T>, q: &Point<T>) -> f64 {
    let (px, py, qx, qy) = (p.x.to_f64(), p.y.to_f64(), q.x.to_f64(), q.y.to_f64());
    let num = ((px - qx).powi(2) + (py - qy).powi(2)).sqrt();
    let den = ((px - qx).powi(2) + (py + qy).powi(2)).sqrt();
    2.0 * (num / den).atanh()
}

/// Distance from the `sinh` form `sinh²(d/2) = |P−Q|²/(4 Im P Im Q)`.
pub fn distance_sinh<T: Scalar>(p: &Point<T>, q: &Point<T>) -> f64 {
    let dz = Point::new(p.x.clone() - q.x.clone(), p.y.clone() - q.y.clone());
    let r = dz.norm_sq().to_f64() / (4.0 * p.y.to_f64() * q.y.to_f64());
    2.0 * r.sqrt().asinh()
}

/// Hyperbolic center and radius of a Euclidean circle inside ℍ.
pub fn hyperbolic_circle<T: Scalar>(center: &Point<T>, radius: &T) -> Result<(Point<f64>, f64)> {
    if radius.is_negative() || *radius >= center.y {
        return Err(Error::NotInsideHalfPlane);
    }
    let (x, y, r) = (center.x.to_f64(), center.y.to_f64(), radius.to_f64());
    Ok((Point { x, y: (y * y - r * r).sqrt() }, (r / y).atanh()))
}

/// The parabolic `P_t = ((1−tx, tx²), (−t, 1+tx))` fixing `x`.
pub fn parabolic_stabilizer<T: Scalar>(x: &T, t: &T) -> MobiusMap<T> {
    let tx = t.clone() * x.clone();
    MobiusMap {
        a: T::one() - tx.clone(),
        b: tx.clone() * x.clone(),
        c: -t.clone(),
        d: T::one() + tx,
    }
}

/// Area `(k−2)π − Σαⱼ` of a hyperbolic polygon with the given interior angles.
pub fn polygon_area(angles: &[f64]) -> Result<f64> {
    if angles.len() < 3 {
        return Err(Error::TooFewEdges);
    }
    if let Some(a) = angles.iter().find(|a| !(0.0..std::f64::consts::PI).contains(*a)) {
        return Err(Error::BadAngle(a.to_string()));
    }
    Ok((angles.len() as f64 - 2.0) * std::f64::consts::PI - angles.iter().sum::<f64>())
}
