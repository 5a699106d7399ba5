//! Complete flags in `Tⁿ`, general position, the lines and planes of a flag triple
//! indexed by the triangle graph, triple ratios and cross ratios of pencils.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::halfplane::{cross_ratio, BoundaryPoint};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Barycentric coordinates `(a, b, c)` in the triangle graph.
pub type Bary = (usize, usize, usize);

/// A linear subspace stored as the reduced row echelon basis of its row span.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
}

impl<T: Scalar> Subspace<T> {
    pub fn span(ambient: usize, rows: Vec<Vec<T>>) -> Self {
        let basis = if rows.is_empty() {
            Matrix::zeros(0, ambient)
        } else {
            Matrix::from_rows(rows).row_basis()
        };
        Subspace { ambient, basis }
    }

    pub fn whole(n: usize) -> Self {
        Subspace { ambient: n, basis: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<T>> {
        (0..self.dim()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Vectors orthogonal to every row, as a subspace.
    fn annihilator(&self) -> Matrix<T> {
        self.basis.nullspace()
    }

    pub fn intersect_all(ambient: usize, spaces: &[&Subspace<T>]) -> Self {
        let ann: Vec<Vec<T>> = spaces
            .iter()
            .flat_map(|s| {
                let a = s.annihilator();
                (0..a.rows()).map(move |i| a.row(i).to_vec()).collect::<Vec<_>>()
            })
            .collect();
        if ann.is_empty() {
            return Subspace::whole(ambient);
        }
        let ns = Matrix::from_rows(ann).nullspace();
        Subspace::span(ambient, (0..ns.rows()).map(|i| ns.row(i).to_vec()).collect())
    }

    pub fn intersect(&self, other: &Self) -> Self {
        Subspace::intersect_all(self.ambient, &[self, other])
    }

    pub fn contains(&self, v: &[T]) -> bool {
        let mut rows = self.vectors();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    /// Coordinates of `v` in the stored basis.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        self.basis.transpose().solve(v)
    }
}

/// Rescales so the first nonzero coordinate is 1.
pub fn normalize<T: Scalar>(v: &[T]) -> Vec<T> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(p) => {
            let p = p.clone();
            v.iter().map(|x| x.clone() / p.clone()).collect()
        }
        None => v.to_vec(),
    }
}

/// Projective equality of two vectors.
pub fn same_line<T: Scalar>(u: &[T], v: &[T]) -> bool {
    !u.iter().all(|x| x.is_zero()) && normalize(u) == normalize(v)
}

/// A complete flag: `F_i` is the span of the first `i` rows of `basis`.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag<T> {
    basis: Matrix<T>,
}

impl<T: Scalar> Flag<T> {
    pub fn new(basis: Matrix<T>) -> Result<Self> {
        if !basis.is_square() {
            return Err(Error::DimensionMismatch(format!("{}x{} flag basis", basis.rows(), basis.cols())));
        }
        if basis.det().is_zero() {
            return Err(Error::DegenerateInput("flag basis is singular".into()));
        }
        Ok(Flag { basis })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("flag rows".into()));
        }
        Flag::new(Matrix::from_rows(rows))
    }

    /// The flag `⟨e₁⟩ ⊂ ⟨e₁,e₂⟩ ⊂ …`.
    pub fn standard(n: usize) -> Self {
        Flag { basis: Matrix::identity(n) }
    }

    /// The flag `⟨eₙ⟩ ⊂ ⟨eₙ,eₙ₋₁⟩ ⊂ …`.
    pub fn opposite(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, n - 1 - i, T::one());
        }
        Flag { basis: m }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn subspace(&self, i: usize) -> Subspace<T> {
        Subspace::span(self.dim(), (0..i).map(|r| self.basis.row(r).to_vec()).collect())
    }

    /// Image under `v ↦ v·Mᵀ` (each basis vector mapped by `M`).
    pub fn transform(&self, m: &Matrix<T>) -> Result<Self> {
        Flag::new(&self.basis * &m.transpose())
    }
}

fn check_dims<T: Scalar>(flags: &[&Flag<T>]) -> Result<usize> {
    let n = flags[0].dim();
    if flags.iter().any(|f| f.dim() != n) {
        return Err(Error::DimensionMismatch("flags of different dimensions".into()));
    }
    Ok(n)
}

/// Every intersection `F⁽¹⁾_i ∩ F⁽²⁾_j ∩ F⁽³⁾_k` has the generic dimension
/// `max(i + j + k − 2n, 0)`. Pairwise transversality is the case `k = n`.
pub fn general_position<T: Scalar>(f1: &Flag<T>, f2: &Flag<T>, f3: &Flag<T>) -> Result<bool> {
    let n = check_dims(&[f1, f2, f3])?;
    let subs: Vec<Vec<Subspace<T>>> = [f1, f2, f3].iter().map(|f| (0..=n).map(|i| f.subspace(i)).collect()).collect();
    for i in 0..=n {
        for j in 0..=n {
            let ij = subs[0][i].intersect(&subs[1][j]);
            for k in 0..=n {
                let expected = (i + j + k).saturating_sub(2 * n);
                if ij.intersect(&subs[2][k]).dim() != expected {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn transverse<T: Scalar>(f: &Flag<T>, g: &Flag<T>) -> Result<bool> {
    let n = check_dims(&[f, g])?;
    for i in 0..=n {
        for j in 0..=n {
            if f.subspace(i).intersect(&g.subspace(j)).dim() != (i + j).saturating_sub(n) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lines `Λᵢ = F_i ∩ G_{n−i+1}`, normalized.
pub fn two_flag_splitting<T: Scalar>(f: &Flag<T>, g: &Flag<T>) -> Result<Vec<Vec<T>>> {
    if !transverse(f, g)? {
        return Err(Error::NotTransverse);
    }
    let n = f.dim();
    Ok((1..=n).map(|i| normalize(&f.subspace(i).intersect(&g.subspace(n - i + 1)).vectors()[0])).collect())
}

/// Vectors `v₁..vₙ` on the first `n` lines with `Σ αᵢvᵢ` on the last line. Unique up
/// to one scalar, fixed by making the first nonzero entry of `v₁` equal to 1.
pub fn projective_basis_vectors<T: Scalar>(lines: &[Vec<T>], weights: &[T]) -> Result<Vec<Vec<T>>> {
    let n = weights.len();
    if lines.len() != n + 1 || lines.iter().any(|l| l.len() != n) {
        return Err(Error::DimensionMismatch(format!("{} lines, {} weights", lines.len(), n)));
    }
    if weights.iter().any(|w| w.is_zero()) {
        return Err(Error::NotProjectiveBasis);
    }
    let m = Matrix::from_rows(lines[..n].to_vec());
    if m.det().is_zero() {
        return Err(Error::NotProjectiveBasis);
    }
    let c = m.transpose().solve(&lines[n]).ok_or(Error::NotProjectiveBasis)?;
    if c.iter().any(|x| x.is_zero()) {
        return Err(Error::NotProjectiveBasis);
    }
    let mut vs: Vec<Vec<T>> = (0..n)
        .map(|i| {
            let f = c[i].clone() / weights[i].clone();
            lines[i].iter().map(|x| x.clone() * f.clone()).collect()
        })
        .collect();
    let p = vs[0].iter().find(|x| !x.is_zero()).cloned().ok_or(Error::NotProjectiveBasis)?;
    for v in &mut vs {
        for x in v.iter_mut() {
            *x = x.clone() / p.clone();
        }
    }
    Ok(vs)
}

/// One of the three sides of a triangle, named by its two vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    S12,
    S23,
    S31,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::S12, Side::S23, Side::S31];

    /// Lattice vertex number `k` (1 ≤ k ≤ n−1) on this side.
    pub fn vertex(self, n: usize, k: usize) -> Bary {
        match self {
            Side::S12 => (n - k, k, 0),
            Side::S23 => (0, n - k, k),
            Side::S31 => (k, 0, n - k),
        }
    }

    /// Upward tiles along the side in snake order, and the tiles used by the
    /// orientation rule between consecutive ones.
    pub fn snake_tiles(self, n: usize) -> (Vec<Bary>, Vec<Bary>) {
        let tiles = (0..n)
            .map(|k| match self {
                Side::S12 => (n - 1 - k, k, 0),
                Side::S23 => (0, n - 1 - k, k),
                Side::S31 => (k, 0, n - 1 - k),
            })
            .collect();
        let third = (0..n.saturating_sub(1))
            .map(|k| match self {
                Side::S12 => (n - 2 - k, k, 1),
                Side::S23 => (1, n - 2 - k, k),
                Side::S31 => (k, 1, n - 2 - k),
            })
            .collect();
        (tiles, third)
    }

    pub fn label(self) -> &'static str {
        match self {
            Side::S12 => "12",
            Side::S23 => "23",
            Side::S31 => "31",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Side::S12),
            "23" => Ok(Side::S23),
            "31" => Ok(Side::S31),
            _ => Err(Error::InvalidSurface(format!("unknown side {s:?}"))),
        }
    }
}

/// Lines `λ_{abc}` (`a+b+c = n−1`) and planes `π_{abc}` (`a+b+c = n−2`) of a flag triple.
#[derive(Clone, Debug)]
pub struct LineConfig<T> {
    n: usize,
    lines: BTreeMap<Bary, Vec<T>>,
    planes: BTreeMap<Bary, Subspace<T>>,
}

fn triples(sum: usize) -> impl Iterator<Item = Bary> {
    (0..=sum).flat_map(move |a| (0..=sum - a).map(move |b| (a, b, sum - a - b)))
}

pub fn line_config<T: Scalar>(f1: &Flag<T>, f2: &Flag<T>, f3: &Flag<T>) -> Result<LineConfig<T>> {
    if !general_position(f1, f2, f3)? {
        return Err(Error::NotGeneric);
    }
    let n = f1.dim();
    let meet = |a: usize, b: usize, c: usize| {
        Subspace::intersect_all(n, &[&f1.subspace(n - a), &f2.subspace(n - b), &f3.subspace(n - c)])
    };
    let lines = triples(n - 1).map(|(a, b, c)| ((a, b, c), normalize(&meet(a, b, c).vectors()[0]))).collect();
    let planes = if n >= 2 { triples(n - 2).map(|(a, b, c)| ((a, b, c), meet(a, b, c))).collect() } else { BTreeMap::new() };
    Ok(LineConfig { n, lines, planes })
}

impl<T: Scalar> LineConfig<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn line(&self, t: Bary) -> Result<&Vec<T>> {
        self.lines.get(&t).ok_or_else(|| Error::IndexOutOfRange(format!("no line at {t:?}")))
    }

    pub fn plane(&self, t: Bary) -> Result<&Subspace<T>> {
        self.planes.get(&t).ok_or_else(|| Error::IndexOutOfRange(format!("no plane at {t:?}")))
    }

    pub fn lines(&self) -> &BTreeMap<Bary, Vec<T>> {
        &self.lines
    }

    pub fn planes(&self) -> &BTreeMap<Bary, Subspace<T>> {
        &self.planes
    }

    /// Every plane contains the lines at its three vertices.
    pub fn check_containment(&self) -> bool {
        self.planes.iter().all(|(&(a, b, c), p)| {
            [(a + 1, b, c), (a, b + 1, c), (a, b, c + 1)].iter().all(|t| p.contains(&self.lines[t]))
        })
    }

    /// Standard basis of a side: the side's lines, each vector scaled so that it sums with the
    /// previous one into the adjacent line (the orientation rule). Rows are the basis vectors.
    pub fn side_basis(&self, side: Side) -> Result<Matrix<T>> {
        let (tiles, third) = side.snake_tiles(self.n);
        let mut vs = vec![self.line(tiles[0])?.clone()];
        for k in 0..third.len() {
            let prev = vs[k].clone();
            let next = self.line(tiles[k + 1])?;
            let t = self.line(third[k])?;
            // prev + c·next = d·t
            let m = Matrix::from_rows(vec![next.clone(), t.clone()]).transpose();
            let sol = m.solve(&prev.iter().map(|x| -x.clone()).collect::<Vec<_>>()).ok_or_else(|| {
                Error::DegenerateConfiguration(format!("orientation rule fails on side {side}"))
            })?;
            if sol[0].is_zero() {
                return Err(Error::DegenerateConfiguration(format!("orientation rule fails on side {side}")));
            }
            vs.push(next.iter().map(|x| x.clone() * sol[0].clone()).collect());
        }
        Ok(Matrix::from_rows(vs))
    }

    /// Triple ratio at an interior lattice vertex `(a, b, c)`, `a+b+c = n`, all positive.
    /// The six surrounding lines lie in a 3-space; determinants use coordinates there.
    pub fn triple_ratio(&self, v: Bary) -> Result<T> {
        let (a, b, c) = v;
        let n = self.n;
        if a + b + c != n || a == 0 || b == 0 || c == 0 {
            return Err(Error::IndexOutOfRange(format!("{v:?} is not an interior vertex")));
        }
        let f = |x: Bary| self.line(x);
        let (pa, pb, pc) = (f((a + 1, b - 1, c - 1))?, f((a, b, c - 1))?, f((a - 1, b - 1, c + 1))?);
        let (pd, pe, pg) = (f((a - 1, b + 1, c - 1))?, f((a - 1, b, c))?, f((a, b - 1, c))?);
        let space = Subspace::span(n, vec![pa.clone(), pb.clone(), pc.clone(), pd.clone(), pe.clone(), pg.clone()]);
        if space.dim() != 3 {
            return Err(Error::DegenerateConfiguration(format!("lines around {v:?} span {}", space.dim())));
        }
        let coords = |x: &Vec<T>| space.coordinates(x).expect("line lies in its span");
        let d = |x: &Vec<T>, y: &Vec<T>, z: &Vec<T>| Matrix::from_rows(vec![coords(x), coords(y), coords(z)]).det();
        let den = d(pa, pb, pd) * d(pd, pe, pc) * d(pc, pg, pa);
        if den.is_zero() {
            return Err(Error::DegenerateConfiguration(format!("vanishing determinant at {v:?}")));
        }
        Ok(d(pa, pb, pc) * d(pc, pg, pd) * d(pd, pe, pa) / den)
    }
}

/// Cross ratio of four lines in one plane, via their slopes in any basis of the plane.
pub fn pencil_cross_ratio<T: Scalar>(l: [&[T]; 4]) -> Result<T> {
    let n = l[0].len();
    if l.iter().any(|x| x.len() != n) {
        return Err(Error::DimensionMismatch("lines of different lengths".into()));
    }
    let plane = Subspace::span(n, l.iter().map(|x| x.to_vec()).collect());
    if plane.dim() != 2 {
        return Err(Error::NotCoplanar);
    }
    let mut pts = Vec::with_capacity(4);
    for x in l {
        let c = plane.coordinates(x).ok_or(Error::NotCoplanar)?;
        pts.push(if c[0].is_zero() {
            if c[1].is_zero() {
                return Err(Error::DegenerateInput("zero vector".into()));
            }
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Finite(c[1].clone() / c[0].clone())
        });
    }
    cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3])
}
