//! Dense matrices over a [`Ring`], with exact linear algebra over a [`Scalar`] field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Ring, Scalar};

#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// 2×2 matrix.
pub type Mat2<T> = Matrix<T>;

pub fn mat2<T: Ring>(a: T, b: T, c: T, d: T) -> Mat2<T> {
    Matrix::from_vec(2, 2, vec![a, b, c, d])
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Ring> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix::from_vec(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_vec(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn diag(values: Vec<T>) -> Self {
        let n = values.len();
        let mut m = Self::zeros(n, n);
        for (i, v) in values.into_iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_vec(self.cols, self.rows, data)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self.get(i, i).clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    /// Returns `Some(c)` if the matrix equals `c·I`.
    pub fn scalar_value(&self) -> Option<T> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { T::one() } else { self.get(0, 0).clone() };
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if i == j {
                    if *v != c {
                        return None;
                    }
                } else if !v.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let mut data = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix::from_vec(self.rows - 1, self.cols - 1, data)
    }

    /// Division-free determinant by cofactor expansion; intended for small sizes and
    /// for rings without division.
    pub fn det_expand(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        match self.rows {
            0 => T::one(),
            1 => self.get(0, 0).clone(),
            2 => {
                self.get(0, 0).clone() * self.get(1, 1).clone()
                    - self.get(0, 1).clone() * self.get(1, 0).clone()
            }
            n => {
                let mut acc = T::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a.clone() * self.minor(0, j).det_expand();
                    acc = if j % 2 == 0 { acc + term } else { acc - term };
                }
                acc
            }
        }
    }

    pub fn adjugate(&self) -> Self {
        let n = self.rows;
        if n == 1 {
            return Self::identity(1);
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(j, i).det_expand();
                out.set(i, j, if (i + j) % 2 == 0 { c } else { -c });
            }
        }
        out
    }

    /// Equality up to a nonzero scalar: `A·adj(B)` is a nonzero scalar matrix.
    pub fn proj_eq(&self, other: &Self) -> bool {
        if self.rows != other.rows || self.cols != other.cols || !self.is_square() {
            return false;
        }
        match (self * &other.adjugate()).scalar_value() {
            Some(c) => !c.is_zero(),
            None => false,
        }
    }
}

impl<T: Scalar> Matrix<T> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = T::one() / m.get(r, c).clone();
            for j in 0..m.cols {
                let v = m.get(r, j).clone() * inv.clone();
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = m.get(i, j).clone() - f.clone() * m.get(r, j).clone();
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per row of the result.
    pub fn nullspace(&self) -> Self {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, T::one());
            for (i, &p) in pivots.iter().enumerate() {
                out.set(k, p, -r.get(i, f).clone());
            }
        }
        out
    }

    /// Row echelon basis of the row span (zero rows dropped).
    pub fn row_basis(&self) -> Self {
        let (r, pivots) = self.rref();
        let k = pivots.len();
        Matrix::from_vec(k, self.cols, r.data[..k * self.cols].to_vec())
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = T::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return T::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det = det * piv.clone();
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone() / piv.clone();
                for j in c..n {
                    let v = m.get(i, j).clone() - f.clone() * m.get(c, j).clone();
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, T::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Solves `self·x = b` for a consistent system; returns one solution (free variables zero).
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Scalar::to_f64)
    }
}

impl<T: Ring> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).clone() + a.clone() * b.clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

impl<T: Ring> Mul for Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: Matrix<T>) -> Matrix<T> {
        &self * &rhs
    }
}

impl<T: Ring> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() + b.clone()).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }
}

impl<T: Ring> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a.clone() - b.clone()).collect();
        Matrix::from_vec(self.rows, self.cols, data)
    }
}

impl<T: Ring> Neg for Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: Ring> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

/// Ordered product of a list of matrices, identity when empty.
pub fn product<'a, T: Ring + 'a>(n: usize, factors: impl IntoIterator<Item = &'a Matrix<T>>) -> Matrix<T> {
    factors.into_iter().fold(Matrix::identity(n), |acc, m| &acc * m)
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self.data[i * self.cols + j])?;
            }
        }
        write!(f, "]")
    }
}

impl<T: fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Rational};
    use proptest::prelude::*;

    fn m(rows: Vec<Vec<i64>>) -> Matrix<Rational> {
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|v| q(v, 1)).collect()).collect())
    }

    #[test]
    fn det_and_inverse() {
        let a = m(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        assert_eq!(a.det(), q(18, 1));
        assert_eq!(a.det_expand(), q(18, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(3));
        assert_eq!(a.adjugate(), inv.scale(&q(18, 1)));
    }

    #[test]
    fn nullspace_rank() {
        let a = m(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(a.rank(), 1);
        let ns = a.nullspace();
        assert_eq!(ns.rows(), 2);
        assert!((&a * &ns.transpose()).entries().iter().all(|x| x.is_zero()));
    }

    #[test]
    fn singular_has_no_inverse() {
        assert!(m(vec![vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn projective_equality() {
        let a = m(vec![vec![1, 2], vec![3, 4]]);
        assert!(a.proj_eq(&a.scale(&q(-7, 3))));
        assert!(!a.proj_eq(&m(vec![vec![1, 2], vec![3, 5]])));
    }

    #[test]
    fn solve_consistent() {
        let a = m(vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(a.solve(&[q(1, 1), q(2, 1), q(3, 1)]), Some(vec![q(1, 1), q(2, 1)]));
        assert_eq!(a.solve(&[q(1, 1), q(2, 1), q(4, 1)]), None);
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
        prop::collection::vec((-6i64..=6, 1i64..=4), n * n)
            .prop_map(move |v| Matrix::from_vec(n, n, v.into_iter().map(|(a, b)| q(a, b)).collect()))
    }

    proptest! {
        #[test]
        fn det_is_multiplicative(a in small_matrix(3), b in small_matrix(3)) {
            prop_assert_eq!((&a * &b).det(), a.det() * b.det());
        }

        #[test]
        fn elimination_matches_expansion(a in small_matrix(4)) {
            prop_assert_eq!(a.det(), a.det_expand());
        }

        #[test]
        fn adjugate_identity(a in small_matrix(3)) {
            let d = a.det();
            prop_assert_eq!(&a * &a.adjugate(), Matrix::identity(3).scale(&d));
        }
    }
}
