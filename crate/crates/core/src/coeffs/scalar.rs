use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Coeff, Mono, Poly, Ring, Star, Q};
use crate::error::{Error, Result};

/// Laurent polynomials in the parameter symbols.
pub type SymPoly = Poly<BigRational>;

/// Variable 0 is `u = q^(1/Q_ROOT_DENOM)`. Every `q^(1/2m)` needed by a
/// supported root system is an integral power of `u`.
pub const Q_ROOT_DENOM: i64 = 5040;

/// Variables 1..=3 are `t(2)^(1/2)`, `t(1)^(1/2)`, `t(2/3)^(1/2)`.
const T_NAMES: [&str; 3] = ["t", "t[1]", "t[2/3]"];

/// Exact element of the field of fractions of the parameter Laurent ring.
#[derive(Clone, Debug)]
pub struct ParamScalar {
    num: SymPoly,
    den: SymPoly,
}

impl ParamScalar {
    pub fn new(num: SymPoly, den: SymPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Arithmetic("zero denominator".into()));
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(num: SymPoly) -> Self {
        ParamScalar { num, den: SymPoly::one() }
    }

    /// `q^e`; `e * Q_ROOT_DENOM` must be an integer.
    pub fn q_pow(e: Q) -> Result<Self> {
        let k = e * Q_ROOT_DENOM;
        if !k.is_integer() {
            return Err(Error::Arithmetic(format!("q exponent {e} is not supported")));
        }
        Ok(Self::u_pow(k.to_integer()))
    }

    pub fn u_pow(k: i64) -> Self {
        Self::from_poly(SymPoly::monomial(Mono::var(0, k as i32), BigRational::one()))
    }

    /// `t(nu)^(k/2)` for the length class with index `class`.
    pub fn t_half_pow(class: usize, k: i32) -> Self {
        Self::from_poly(SymPoly::monomial(Mono::var(1 + class, k), BigRational::one()))
    }

    pub fn numer(&self) -> &SymPoly {
        &self.num
    }

    pub fn denom(&self) -> &SymPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Splits a scalar whose denominator is free of `q` into powers of
    /// `u = q^(1/Q_ROOT_DENOM)` times `q`-free scalars.
    pub fn split_q(&self) -> Result<Vec<(i64, ParamScalar)>> {
        if self.den.terms().any(|(m, _)| m.get(0) != 0) {
            return Err(Error::Unsupported("q in a non-monomial denominator".into()));
        }
        let mut parts: std::collections::BTreeMap<i64, SymPoly> = Default::default();
        for (m, c) in self.num.terms() {
            let e = m.get(0) as i64;
            let mut v = m.to_vec(m.support_len());
            if !v.is_empty() {
                v[0] = 0;
            }
            parts.entry(e).or_default().add_term(Mono::from_i64(&v), c.clone());
        }
        Ok(parts
            .into_iter()
            .map(|(e, p)| (e, ParamScalar::normalized(p, self.den.clone())))
            .collect())
    }

    /// Rational value if the scalar is free of symbols.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.constant_term() / self.den.constant_term())
        } else {
            None
        }
    }

    /// Substitute each symbol by a unit of the target ring.
    pub fn eval<C: Coeff>(&self, u: &C, t_half: &[C; 3]) -> Result<C> {
        let ev = |p: &SymPoly| -> Result<C> {
            let mut acc = C::zero();
            for (m, c) in p.terms() {
                let mut term = C::from_rational(c);
                term = term * u.try_powi(m.get(0) as i64)?;
                for (i, t) in t_half.iter().enumerate() {
                    let e = m.get(1 + i);
                    if e != 0 {
                        term = term * t.try_powi(e as i64)?;
                    }
                }
                acc = acc + term;
            }
            Ok(acc)
        };
        ev(&self.num)?.try_div(&ev(&self.den)?)
    }

    fn normalized(num: SymPoly, den: SymPoly) -> Self {
        if num.is_zero() {
            return ParamScalar { num, den: SymPoly::one() };
        }
        if den.is_monomial() {
            let (m, c) = den.leading().unwrap();
            let inv = c.recip();
            return ParamScalar { num: num.shift(&m.neg(), &inv), den: SymPoly::one() };
        }
        if let Ok(q) = num.exact_div(&den) {
            return ParamScalar { num: q, den: SymPoly::one() };
        }
        // Scale so the denominator's leading term is exactly 1.
        let (m, c) = den.leading().map(|(m, c)| (m.neg(), c.recip())).unwrap();
        ParamScalar { num: num.shift(&m, &c), den: den.shift(&m, &c) }
    }
}

impl PartialEq for ParamScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        self.num.clone() * other.den.clone() == other.num.clone() * self.den.clone()
    }
}

impl Zero for ParamScalar {
    fn zero() -> Self {
        Self::from_poly(SymPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ParamScalar {
    fn one() -> Self {
        Self::from_poly(SymPoly::one())
    }
}

impl Neg for ParamScalar {
    type Output = Self;
    fn neg(self) -> Self {
        ParamScalar { num: -self.num, den: self.den }
    }
}

impl Add for ParamScalar {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.num.is_zero() {
            return rhs;
        }
        if rhs.num.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            return Self::normalized(self.num + rhs.num, self.den);
        }
        if let Ok(g) = rhs.den.exact_div(&self.den) {
            return Self::normalized(self.num * g + rhs.num, rhs.den);
        }
        if let Ok(g) = self.den.exact_div(&rhs.den) {
            return Self::normalized(self.num + rhs.num * g, self.den);
        }
        Self::normalized(
            self.num * rhs.den.clone() + rhs.num * self.den.clone(),
            self.den * rhs.den,
        )
    }
}

impl Sub for ParamScalar {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for ParamScalar {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.num.is_zero() || rhs.num.is_zero() {
            return Self::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_poly(self.num * rhs.num);
        }
        Self::normalized(self.num * rhs.num, self.den * rhs.den)
    }
}

impl Ring for ParamScalar {
    fn from_rational(r: &BigRational) -> Self {
        Self::from_poly(SymPoly::constant(r.clone()))
    }
}

impl Coeff for ParamScalar {
    fn try_inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl Star for ParamScalar {
    fn star(&self) -> Self {
        Self::normalized(self.num.invert_variables(), self.den.invert_variables())
    }
}

fn fmt_sym_poly(p: &SymPoly, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (m, c) in p.terms().rev() {
        let mut factors = Vec::new();
        let e = m.get(0) as i64;
        if e != 0 {
            factors.push(symbol_power("q", Q::new(e, Q_ROOT_DENOM)));
        }
        for (i, name) in T_NAMES.iter().enumerate() {
            let e = m.get(1 + i) as i64;
            if e != 0 {
                factors.push(symbol_power(name, Q::new(e, 2)));
            }
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        if factors.is_empty() {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{}", factors.join("*"))?;
        } else {
            write!(f, "{a}*{}", factors.join("*"))?;
        }
    }
    Ok(())
}

fn symbol_power(name: &str, e: Q) -> String {
    if e.is_one() {
        name.to_string()
    } else if e.is_integer() {
        format!("{name}^{e}")
    } else {
        format!("{name}^({e})")
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            fmt_sym_poly(&self.num, f)
        } else {
            write!(f, "(")?;
            fmt_sym_poly(&self.num, f)?;
            write!(f, ")/(")?;
            fmt_sym_poly(&self.den, f)?;
            write!(f, ")")
        }
    }
}
