//! Elementary matrices, snake moves and the transport matrices of a triangle
//! carrying Fock–Goncharov coordinates.
//!
//! All `PGLₙ` elements are unnormalized representatives; compare them with
//! [`Matrix::proj_eq`].

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::flags::{Bary, Side};
use crate::matrix::{Mat2, Matrix};
use crate::scalar::{q, Rational, Ring, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum ElemMatrix<T> {
    /// `I + E_{k+1,k}`
    L(usize),
    /// `diag(1, …, 1, t, …, t)` with `k` ones.
    H(usize, T),
    /// Antidiagonal, `S_{i,n+1−i} = (−1)^{n−i}`.
    S,
}

pub fn elem<T: Ring>(n: usize, e: &ElemMatrix<T>) -> Result<Matrix<T>> {
    match e {
        ElemMatrix::L(k) => {
            if *k == 0 || *k >= n {
                return Err(Error::IndexOutOfRange(format!("L_{k} in dimension {n}")));
            }
            let mut m = Matrix::identity(n);
            m.set(*k, k - 1, T::one());
            Ok(m)
        }
        ElemMatrix::H(k, t) => {
            if *k == 0 || *k > n {
                return Err(Error::IndexOutOfRange(format!("H_{k} in dimension {n}")));
            }
            Ok(Matrix::diag((0..n).map(|i| if i < *k { T::one() } else { t.clone() }).collect()))
        }
        ElemMatrix::S => {
            let mut m = Matrix::zeros(n, n);
            for i in 1..=n {
                let v = if (n - i) % 2 == 0 { T::one() } else { -T::one() };
                m.set(i - 1, n - i, v);
            }
            Ok(m)
        }
    }
}

pub fn s_matrix<T: Ring>(n: usize) -> Matrix<T> {
    elem(n, &ElemMatrix::S).expect("S exists in every dimension")
}

/// Move I: pivots the last segment; the last basis vector becomes `vₙ + vₙ₋₁`.
/// Bases are stored as rows and transform as `new = M·old`.
pub fn move_one<T: Ring>(basis: &Matrix<T>) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = basis.rows();
    let m = elem(n, &ElemMatrix::L(n - 1))?;
    let next = &m * basis;
    Ok((m, next))
}

/// Move II flipping segments `k, k+1`: multiplies by `L_k·H̃_{k+1}(Z)`.
pub fn move_two<T: Scalar>(basis: &Matrix<T>, k: usize, z: &T) -> Result<(Matrix<T>, Matrix<T>)> {
    let n = basis.rows();
    if k == 0 || k + 2 > n {
        return Err(Error::BadSegment(format!("segment {k} in dimension {n}")));
    }
    if !z.is_positive() {
        return Err(Error::NonpositiveParameter(format!("Z = {z}")));
    }
    let m = &elem(n, &ElemMatrix::L(k))? * &elem(n, &ElemMatrix::H(k + 1, z.clone()))?;
    let next = &m * basis;
    Ok((m, next))
}

/// The change of basis between the two side snakes of a triangle for `n = 3`.
pub fn standard_matrix_n3<T: Ring>(z: &T) -> Matrix<T> {
    let (o, i) = (T::zero(), T::one());
    Matrix::from_rows(vec![
        vec![i.clone(), i.clone() + z.clone(), z.clone()],
        vec![-i.clone(), -i.clone(), o.clone()],
        vec![i, o.clone(), o],
    ])
}

/// `H̃_k(Z)·S = Z·S·H̃_{n−k}(Z⁻¹)`.
pub fn hs_swap_check<T: Scalar>(n: usize, k: usize, z: &T) -> Result<bool> {
    let s = s_matrix(n);
    let lhs = &elem(n, &ElemMatrix::H(k, z.clone()))? * &s;
    let inv = z.try_inv().ok_or_else(|| Error::NonpositiveParameter(format!("Z = {z}")))?;
    let rhs = if k == n { s.clone() } else { (&s * &elem(n, &ElemMatrix::H(n - k, inv))?).scale(z) };
    Ok(lhs == rhs)
}

/// `S·H̃₁(λ²) = λ·X(λ)` in dimension 2.
pub fn shear_from_snakes<T: Ring>(lambda: &T) -> Mat2<T> {
    &s_matrix(2) * &elem(2, &ElemMatrix::H(1, lambda.clone() * lambda.clone())).expect("n = 2")
}

/// `L = S·L₁·S·L₁`.
pub fn left_from_snakes<T: Ring>() -> Mat2<T> {
    let sl = &s_matrix(2) * &elem(2, &ElemMatrix::L(1)).expect("n = 2");
    &sl * &sl
}

/// `R = −S·L₁`.
pub fn right_from_snakes<T: Ring>() -> Mat2<T> {
    -(&s_matrix(2) * &elem(2, &ElemMatrix::L(1)).expect("n = 2"))
}

/// Positive values on the lattice points of `Δₙ` other than its corners.
#[derive(Clone, Debug, PartialEq)]
pub struct FGAssignment<T> {
    n: usize,
    values: BTreeMap<Bary, T>,
}

/// Lattice points `a+b+c = n` other than the corners, in lexicographic order.
pub fn fg_keys(n: usize) -> Vec<Bary> {
    (0..=n)
        .flat_map(|a| (0..=n - a).map(move |b| (a, b, n - a - b)))
        .filter(|&(a, b, c)| a.max(b).max(c) < n)
        .collect()
}

pub fn is_interior((a, b, c): Bary) -> bool {
    a > 0 && b > 0 && c > 0
}

impl<T: Scalar> FGAssignment<T> {
    pub fn new(n: usize, values: BTreeMap<Bary, T>) -> Result<Self> {
        if n < 2 {
            return Err(Error::IndexOutOfRange(format!("n = {n}")));
        }
        let keys = fg_keys(n);
        for k in &keys {
            match values.get(k) {
                None => return Err(Error::IncompleteAssignment(format!("{k:?}"))),
                Some(v) if !v.is_positive() => return Err(Error::NonpositiveParameter(format!("Z{k:?} = {v}"))),
                _ => {}
            }
        }
        if let Some(extra) = values.keys().find(|k| !keys.contains(k)) {
            return Err(Error::IndexOutOfRange(format!("{extra:?} is not a coordinate for n = {n}")));
        }
        Ok(FGAssignment { n, values })
    }

    pub fn constant(n: usize, v: T) -> Result<Self> {
        FGAssignment::new(n, fg_keys(n).into_iter().map(|k| (k, v.clone())).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, k: Bary) -> &T {
        &self.values[&k]
    }

    pub fn values(&self) -> &BTreeMap<Bary, T> {
        &self.values
    }

    pub fn with(&self, k: Bary, v: T) -> Result<Self> {
        let mut values = self.values.clone();
        values.insert(k, v);
        FGAssignment::new(self.n, values)
    }

    /// Value at the `k`-th lattice point of a side.
    pub fn side(&self, side: Side, k: usize) -> &T {
        self.get(side.vertex(self.n, k))
    }

    /// `(σZ)(a, b, c) = Z(c, a, b)`.
    pub fn rotate(&self) -> Self {
        let values = self.values.keys().map(|&(a, b, c)| ((a, b, c), self.values[&(c, a, b)].clone())).collect();
        FGAssignment { n: self.n, values }
    }
}

impl FGAssignment<Rational> {
    /// Random values `p/q` with `1 ≤ p, q ≤ 9`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        let values = fg_keys(n).into_iter().map(|k| (k, q(rng.gen_range(1..=9), rng.gen_range(1..=9)))).collect();
        FGAssignment { n, values }
    }
}

/// One factor of a transport product; `H` refers to a coordinate of the unrotated assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Factor {
    S,
    L(usize),
    H(usize, Bary),
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::S => write!(f, "S"),
            Factor::L(k) => write!(f, "L{k}"),
            Factor::H(k, (a, b, c)) => write!(f, "H{k}(Z{a}{b}{c})"),
        }
    }
}

fn rotate_key((a, b, c): Bary, times: usize) -> Bary {
    (0..times).fold((a, b, c), |(a, b, c), _| (c, a, b))
}

/// Factor list of `T_which`, left to right.
pub fn transport_factors(n: usize, which: usize) -> Result<Vec<Factor>> {
    if !(1..=3).contains(&which) || n < 2 {
        return Err(Error::IndexOutOfRange(format!("T{which} for n = {n}")));
    }
    let r = |k: Bary| rotate_key(k, which - 1);
    let mut out = vec![Factor::S];
    for k in 1..n {
        out.push(Factor::H(n - k, r((k, 0, n - k))));
    }
    out.push(Factor::L(n - 1));
    for j in 1..n - 1 {
        for i in (1..=j).rev() {
            out.push(Factor::L(n - i - 1));
            out.push(Factor::H(n - i, r((i, j - i + 1, n - 1 - j))));
        }
        out.push(Factor::L(n - 1));
    }
    for k in 1..n {
        out.push(Factor::H(k, r((n - k, k, 0))));
    }
    Ok(out)
}

/// Transport matrix `T_which` (1, 2 or 3) of a triangle.
pub fn transport<T: Scalar>(z: &FGAssignment<T>, which: usize) -> Result<Matrix<T>> {
    let n = z.n();
    let mut m = Matrix::identity(n);
    for f in transport_factors(n, which)? {
        let e = match f {
            Factor::S => ElemMatrix::S,
            Factor::L(k) => ElemMatrix::L(k),
            Factor::H(k, key) => ElemMatrix::H(k, z.get(key).clone()),
        };
        m = &m * &elem(n, &e)?;
    }
    Ok(m)
}

/// Inverse of a transport matrix up to scalar (the adjugate).
pub fn transport_inv<T: Scalar>(z: &FGAssignment<T>, which: usize) -> Result<Matrix<T>> {
    Ok(transport(z, which)?.adjugate())
}
