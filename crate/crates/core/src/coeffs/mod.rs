//! Exact coefficient arithmetic.
//!
//! Everything above this module is generic over a [`Coeff`]: the same
//! Demazure-Lusztig code runs on fully symbolic [`ParamScalar`]s, on rational
//! specializations at generic points, and on truncated `h`-series.

mod params;
mod poly;
mod scalar;
mod series;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub use num_rational::BigRational;
pub use num_traits::{One, Zero};
pub use params::{LengthClass, Params};
pub use poly::{Mono, Poly};
pub use scalar::{ParamScalar, SymPoly, Q_ROOT_DENOM};
pub use series::{HSeries, QSeries, Series};

/// Small exact rationals used for root-system geometry.
pub type Q = num_rational::Ratio<i64>;

/// A commutative ring with exact equality.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn from_q(r: Q) -> Self {
        Self::from_rational(&q_to_big(r))
    }

    fn pow(&self, e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

/// A ring in which units can be inverted (division may fail on non-units).
pub trait Coeff: Ring {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, other: &Self) -> Result<Self> {
        Ok(self.clone() * other.try_inv()?)
    }

    /// Integer power, negative exponents through `try_inv`.
    fn try_powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.try_inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// The `*` conjugation: `q -> 1/q`, `t(nu) -> 1/t(nu)`, rationals fixed.
pub trait Star: Coeff {
    fn star(&self) -> Self;
}

pub fn q_to_big(r: Q) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

impl Ring for BigRational {
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Coeff for BigRational {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(Error::Arithmetic("division by zero".into()))
        } else {
            Ok(self.recip())
        }
    }
}
