//! Number types used throughout the crate.
//!
//! [`Ring`] is the minimum needed to multiply matrices (it is also implemented by
//! [`crate::laurent::LaurentPoly`] for symbolic evaluation). [`Scalar`] is an ordered
//! field with an optional exact square root; it is implemented by [`Rational`]
//! (exact, the default) and `f64` (fallback).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational number.
pub type Rational = BigRational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    /// Multiplicative inverse when it exists in the ring.
    fn try_inv(&self) -> Option<Self>;
}

pub trait Scalar: Ring + Div<Output = Self> + PartialOrd + fmt::Display {
    /// Square root, `None` if negative or (for exact types) irrational.
    fn sqrt(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn from_rational(q: &Rational) -> Self;
    fn parse(s: &str) -> Option<Self>;
    fn is_exact() -> bool;

    fn from_ratio(p: i64, q: i64) -> Self {
        Self::from_rational(&Rational::new(BigInt::from(p), BigInt::from(q)))
    }
    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }
    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn square(&self) -> Self {
        self.clone() * self.clone()
    }
    fn powi(&self, e: i64) -> Self {
        let base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut out = Self::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        out
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl Scalar for Rational {
    fn sqrt(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        if &(&rn * &rn) == n && &(&rd * &rd) == d {
            Some(Rational::new(rn, rd))
        } else {
            None
        }
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn parse(s: &str) -> Option<Self> {
        parse_rational(s)
    }
    fn is_exact() -> bool {
        true
    }
}

impl Ring for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn try_inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
}

impl Scalar for f64 {
    fn sqrt(&self) -> Option<Self> {
        if *self < 0.0 {
            None
        } else {
            Some(f64::sqrt(*self))
        }
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }
    fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some((p, q)) = s.split_once('/') {
            let p: f64 = p.trim().parse().ok()?;
            let q: f64 = q.trim().parse().ok()?;
            return Some(p / q);
        }
        s.parse().ok()
    }
    fn is_exact() -> bool {
        false
    }
}

/// Parses `"p"`, `"p/q"` or a finite decimal like `"-1.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut num = BigInt::from_str(&digits).ok()?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Some(Rational::new(num, den));
    }
    BigInt::from_str(s).ok().map(Rational::from_integer)
}

/// Shorthand for the rational `p/q`.
pub fn q(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact `k`-th root of a rational, if it exists.
pub fn rational_root(x: &Rational, k: u32) -> Option<Rational> {
    if k == 0 {
        return None;
    }
    if k == 1 {
        return Some(x.clone());
    }
    let neg = Signed::is_negative(x);
    if neg && k % 2 == 0 {
        return None;
    }
    let n = x.numer().abs();
    let d = x.denom().abs();
    let rn = n.nth_root(k);
    let rd = d.nth_root(k);
    if num_traits::pow(rn.clone(), k as usize) != n || num_traits::pow(rd.clone(), k as usize) != d {
        return None;
    }
    let r = Rational::new(rn, rd);
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6"), Some(q(1, 2)));
        assert_eq!(parse_rational("-1.25"), Some(q(-5, 4)));
        assert_eq!(parse_rational("-0.5"), Some(q(-1, 2)));
        assert_eq!(parse_rational("7"), Some(q(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exact_sqrt() {
        assert_eq!(Scalar::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Scalar::sqrt(&q(2, 1)), None);
        assert_eq!(Scalar::sqrt(&q(-1, 1)), None);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&q(-8, 27), 3), Some(q(-2, 3)));
        assert_eq!(rational_root(&q(16, 81), 4), Some(q(2, 3)));
        assert_eq!(rational_root(&q(2, 1), 2), None);
    }

    #[test]
    fn powi_negative() {
        assert_eq!(q(2, 3).powi(-2), q(9, 4));
        assert_eq!(Scalar::powi(&2.0f64, 3), 8.0);
    }
}
