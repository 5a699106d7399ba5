//! Multivariate Laurent polynomials with rational coefficients.
//!
//! Used to evaluate path words symbolically: every generator entry is a Laurent
//! monomial in the half-shears, so holonomies and their traces are exact Laurent
//! polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{Rational, Ring, Scalar};

/// Variable name to exponent. Zero exponents are never stored.
pub type Monomial = BTreeMap<String, i64>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), [(name, 1)])
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(Monomial::new(), c);
        p
    }

    pub fn monomial<'a>(coeff: Rational, exps: impl IntoIterator<Item = (&'a str, i64)>) -> Self {
        let mut m = Monomial::new();
        for (v, e) in exps {
            *m.entry(v.to_string()).or_insert(0) += e;
        }
        m.retain(|_, e| *e != 0);
        let mut p = LaurentPoly::default();
        p.add_term(m, coeff);
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The single term if this is a monomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        match self.as_monomial() {
            Some((m, c)) if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    /// Variables that appear with a nonzero exponent.
    pub fn variables(&self) -> std::collections::BTreeSet<String> {
        self.terms.keys().flat_map(|m| m.keys().cloned()).collect()
    }

    pub fn degree_in(&self, var: &str) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|m| m.get(var).copied().unwrap_or(0));
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    /// Replaces each variable `v` that has an entry in `sub` by the given polynomial.
    /// Negative powers require the replacement to be a monomial.
    pub fn substitute(&self, sub: &BTreeMap<String, LaurentPoly>) -> Option<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut term = LaurentPoly::constant(c.clone());
            for (v, &e) in m {
                let base = match sub.get(v) {
                    Some(p) => p.clone(),
                    None => LaurentPoly::var(v),
                };
                term = term * base.pow(e)?;
            }
            out = out + term;
        }
        Some(out)
    }

    pub fn pow(&self, e: i64) -> Option<LaurentPoly> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut out = LaurentPoly::one();
        for _ in 0..e.unsigned_abs() {
            out = out * base.clone();
        }
        Some(out)
    }

    /// Evaluates at a point. Missing variables or a zero base under a negative power give `None`.
    pub fn eval<T: Scalar>(&self, env: &BTreeMap<String, T>) -> Option<T> {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = T::from_rational(c);
            for (v, &e) in m {
                let x = env.get(v)?;
                if e < 0 && x.is_zero() {
                    return None;
                }
                t = t * x.powi(e);
            }
            acc = acc + t;
        }
        Some(acc)
    }

    /// Splits into coefficients of powers of `var`.
    pub fn grade_by(&self, var: &str) -> BTreeMap<i64, LaurentPoly> {
        let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let e = rest.remove(var).unwrap_or(0);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_empty());
        out
    }
}

impl Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::default()
    }
    fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        LaurentPoly::constant(Rational::from_integer(v.into()))
    }
    /// Only monomials are invertible.
    fn try_inv(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        let inv: Monomial = m.iter().map(|(v, e)| (v.clone(), -e)).collect();
        let mut p = LaurentPoly::default();
        p.add_term(inv, c.recip());
        Some(p)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(v.clone()).or_insert(0) += e;
                }
                m.retain(|_, e| *e != 0);
                out.add_term(m, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = abs == Rational::one();
            if !unit || m.is_empty() {
                write!(f, "{abs}")?;
            }
            for (j, (v, e)) in m.iter().enumerate() {
                if j > 0 || !unit {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn x() -> LaurentPoly {
        LaurentPoly::var("x")
    }
    fn y() -> LaurentPoly {
        LaurentPoly::var("y")
    }

    #[test]
    fn cancellation() {
        let p = (x() + y()) * (x() - y());
        let expected = x() * x() - y() * y();
        assert_eq!(p, expected);
        assert!((x() - x()).is_zero());
    }

    #[test]
    fn inverse_monomial_only() {
        let m = LaurentPoly::monomial(q(2, 3), [("x", 2), ("y", -1)]);
        assert_eq!(m.clone() * m.try_inv().unwrap(), LaurentPoly::one());
        assert!((x() + y()).try_inv().is_none());
    }

    #[test]
    fn eval_and_grade() {
        let p = x() * y().pow(-1).unwrap() + LaurentPoly::constant(q(1, 2)) * y();
        let env: BTreeMap<String, Rational> =
            [("x".to_string(), q(3, 1)), ("y".to_string(), q(2, 1))].into();
        assert_eq!(p.eval(&env), Some(q(5, 2)));
        let g = p.grade_by("y");
        assert_eq!(g.keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
        assert_eq!(p.degree_in("y"), Some((-1, 1)));
    }

    #[test]
    fn substitution() {
        let p = x() + x().pow(-1).unwrap();
        let sub: BTreeMap<String, LaurentPoly> =
            [("x".to_string(), LaurentPoly::monomial(q(1, 1), [("a", 1), ("e", -1)]))].into();
        let r = p.substitute(&sub).unwrap();
        assert_eq!(r.grade_by("e").keys().copied().collect::<Vec<_>>(), vec![-1, 1]);
    }

    #[test]
    fn display() {
        let p = LaurentPoly::monomial(q(-1, 1), [("x", 1)]) + LaurentPoly::constant(q(3, 2));
        assert_eq!(p.to_string(), "3/2 - x");
    }
}
