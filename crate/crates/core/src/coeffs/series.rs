use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Coeff, ParamScalar, Ring};
use crate::error::{Error, Result};

/// Truncated Laurent series in one formal symbol.
///
/// `prec = Some(p)` means the value is known modulo `symbol^p`; `None` marks an
/// exact (finitely supported) series. Precision propagates like p-adic
/// precision, so nothing beyond the known digits is ever reported.
#[derive(Clone, Debug)]
pub struct Series<C> {
    terms: BTreeMap<i64, C>,
    prec: Option<i64>,
}

/// Series in `h` with rational coefficients.
pub type HSeries = Series<BigRational>;
/// Series in `u = q^(1/5040)` with `q`-free parameter coefficients.
pub type QSeries = Series<ParamScalar>;

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (Some(x), None) | (None, Some(x)) => Some(x),
        (None, None) => None,
    }
}

impl<C: Ring> Series<C> {
    pub fn exact<I: IntoIterator<Item = (i64, C)>>(terms: I) -> Self {
        Self::with_prec(terms, None)
    }

    pub fn with_prec<I: IntoIterator<Item = (i64, C)>>(terms: I, prec: Option<i64>) -> Self {
        let mut s = Series { terms: BTreeMap::new(), prec };
        for (k, c) in terms {
            s.add_term(k, c);
        }
        s
    }

    pub fn monomial(k: i64, c: C) -> Self {
        Self::exact([(k, c)])
    }

    /// `O(symbol^p)`.
    pub fn big_o(p: i64) -> Self {
        Series { terms: BTreeMap::new(), prec: Some(p) }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> Result<C> {
        if let Some(p) = self.prec {
            if k >= p {
                return Err(Error::Arithmetic(format!("coefficient {k} beyond precision {p}")));
            }
        }
        Ok(self.terms.get(&k).cloned().unwrap_or_else(C::zero))
    }

    fn add_term(&mut self, k: i64, c: C) {
        if c.is_zero() || self.prec.is_some_and(|p| k >= p) {
            return;
        }
        match self.terms.remove(&k) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(k, s);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// Lowest exponent with a known nonzero coefficient, or the precision for
    /// an `O(...)` value.
    pub fn valuation(&self) -> Option<i64> {
        self.terms.keys().next().copied().or(self.prec)
    }

    /// Reduce modulo `symbol^p`.
    pub fn truncate(&self, p: i64) -> Self {
        Self::with_prec(
            self.terms.iter().map(|(k, c)| (*k, c.clone())),
            min_prec(self.prec, Some(p)),
        )
    }

    pub fn map_coeffs<D: Ring, F: FnMut(&C) -> D>(&self, mut f: F) -> Series<D> {
        Series::with_prec(self.terms.iter().map(|(k, c)| (*k, f(c))), self.prec)
    }

    /// Multiply by `symbol^k`.
    pub fn shift(&self, k: i64) -> Self {
        Series::with_prec(self.terms.iter().map(|(e, c)| (e + k, c.clone())), self.prec.map(|p| p + k))
    }

    /// `exp(c * symbol)` modulo `symbol^(order + 1)`.
    pub fn exp_linear(c: &C, order: i64) -> Self {
        let mut terms = Vec::new();
        let mut term = C::one();
        for n in 0..=order {
            if n > 0 {
                term = term * c.clone() * C::from_rational(&BigRational::new(BigInt::one(), BigInt::from(n)));
            }
            terms.push((n, term.clone()));
        }
        Self::with_prec(terms, Some(order + 1))
    }
}

impl<C: Coeff> Series<C> {
    pub fn invert(&self) -> Result<Self> {
        let Some((&v, a0)) = self.terms.iter().next() else {
            return Err(Error::Arithmetic("inverse of a series with no known terms".into()));
        };
        let a0_inv = a0
            .try_inv()
            .map_err(|_| Error::Arithmetic("leading coefficient is not invertible".into()))?;
        let Some(p) = self.prec else {
            if self.terms.len() == 1 {
                return Ok(Self::monomial(-v, a0_inv));
            }
            return Err(Error::Arithmetic("inverse of an exact non-monomial series".into()));
        };
        // Relative precision r: b_n for n < r, with a = x^v (a_0 + a_1 x + ...).
        let r = p - v;
        let a: Vec<(usize, C)> = self
            .terms
            .iter()
            .skip(1)
            .filter(|(k, _)| **k - v < r)
            .map(|(k, c)| ((k - v) as usize, c.clone()))
            .collect();
        let mut b: Vec<Option<C>> = Vec::with_capacity(r as usize);
        for n in 0..r as usize {
            if n == 0 {
                b.push(Some(a0_inv.clone()));
                continue;
            }
            let mut s = C::zero();
            let mut any = false;
            for (i, ai) in &a {
                if *i > n {
                    break;
                }
                if let Some(bn) = &b[n - i] {
                    s = s + ai.clone() * bn.clone();
                    any = true;
                }
            }
            b.push(if any && !s.is_zero() { Some(-(s * a0_inv.clone())) } else { None });
        }
        let b: Vec<(usize, C)> = b.into_iter().enumerate().filter_map(|(i, c)| c.map(|c| (i, c))).collect();
        Ok(Self::with_prec(
            b.into_iter().map(|(i, c)| (i as i64 - v, c)),
            Some(p - 2 * v),
        ))
    }
}

impl<C: Ring> PartialEq for Series<C> {
    fn eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).terms.is_empty()
    }
}

impl<C: Ring> Zero for Series<C> {
    fn zero() -> Self {
        Self::exact([])
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Series<C> {
    fn one() -> Self {
        Self::monomial(0, C::one())
    }
}

impl<C: Ring> Neg for Series<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Series { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect(), prec: self.prec }
    }
}

impl<C: Ring> Add for Series<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let prec = min_prec(self.prec, rhs.prec);
        let mut out = Series { terms: BTreeMap::new(), prec };
        for (k, c) in self.terms.into_iter().chain(rhs.terms) {
            out.add_term(k, c);
        }
        out
    }
}

impl<C: Ring> Sub for Series<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<C: Ring> Mul for Series<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let pa = self.prec.map(|p| p + rhs.valuation().unwrap_or(0));
        let pb = rhs.prec.map(|p| p + self.valuation().unwrap_or(0));
        let prec = min_prec(pa, pb);
        let mut out = Series { terms: BTreeMap::new(), prec };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                if prec.is_some_and(|p| ka + kb >= p) {
                    continue;
                }
                out.add_term(ka + kb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                _ => write!(f, "({c})*h^{k}")?,
            }
        }
        if let Some(p) = self.prec {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "O(h^{p})")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<C: Ring> Ring for Series<C> {
    fn from_rational(r: &BigRational) -> Self {
        Self::monomial(0, C::from_rational(r))
    }
}

impl<C: Coeff> Coeff for Series<C> {
    fn try_inv(&self) -> Result<Self> {
        self.invert()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_inverse() {
        let a = HSeries::with_prec([(0, r(1, 1)), (1, r(-1, 1))], Some(4));
        let b = a.invert().unwrap();
        assert_eq!(b, HSeries::with_prec((0..4).map(|k| (k, r(1, 1))), Some(4)));
    }

    #[test]
    fn exp_series() {
        let c = r(3, 1);
        let e = HSeries::exp_linear(&c, 2);
        assert_eq!(e.coeff(2).unwrap(), r(9, 2));
        assert!(e.coeff(3).is_err());
    }

    #[test]
    fn divided_exponential() {
        // (e^h - 1) / h = 1 + h/2 + h^2/6
        let e = HSeries::exp_linear(&r(1, 1), 3) - HSeries::one();
        let q = e * HSeries::monomial(-1, r(1, 1));
        assert_eq!(q.coeff(0).unwrap(), r(1, 1));
        assert_eq!(q.coeff(1).unwrap(), r(1, 2));
        assert_eq!(q.coeff(2).unwrap(), r(1, 6));
        assert_eq!(q.prec(), Some(3));
    }

    #[test]
    fn precision_limits_products() {
        let a = HSeries::with_prec([(1, r(1, 1))], Some(3));
        let b = HSeries::with_prec([(0, r(2, 1))], Some(2));
        let c = a * b;
        assert_eq!(c.prec(), Some(3));
        assert_eq!(c.coeff(1).unwrap(), r(2, 1));
    }
}
