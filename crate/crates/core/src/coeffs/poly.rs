use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

use super::{Coeff, Ring};
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial. Trailing zeros are trimmed, so the
/// same monomial has one representation whatever the number of variables.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[i32; 8]>);

impl Mono {
    pub fn new<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        let mut v: SmallVec<[i32; 8]> = exps.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Mono(v)
    }

    pub fn from_i64(exps: &[i64]) -> Self {
        Mono::new(exps.iter().map(|&e| i32::try_from(e).expect("exponent overflow")))
    }

    pub fn one() -> Self {
        Mono(SmallVec::new())
    }

    pub fn var(i: usize, e: i32) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = e;
        Mono::new(v)
    }

    pub fn get(&self, i: usize) -> i32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of stored (not trimmed) coordinates.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    /// Coordinates padded to `n` entries.
    pub fn to_vec(&self, n: usize) -> Vec<i64> {
        (0..n.max(self.0.len())).map(|i| self.get(i) as i64).collect()
    }

    pub fn add(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono::new((0..n).map(|i| self.get(i) + o.get(i)))
    }

    pub fn sub(&self, o: &Mono) -> Mono {
        let n = self.0.len().max(o.0.len());
        Mono::new((0..n).map(|i| self.get(i) - o.get(i)))
    }

    pub fn neg(&self) -> Mono {
        Mono::new(self.0.iter().map(|e| -e))
    }

    pub fn scale(&self, k: i32) -> Mono {
        Mono::new(self.0.iter().map(|e| e * k))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn max_abs(&self) -> i32 {
        self.0.iter().map(|e| e.abs()).max().unwrap_or(0)
    }
}

// Lexicographic with implicit zeros, which is a monomial order on Laurent
// monomials (compatible with multiplication).
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.get(i).cmp(&other.get(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Finitely supported sparse (Laurent) polynomial with coefficients in `C`.
///
/// Serves as the X-Laurent polynomials of the polynomial representation (one
/// variable per fundamental coweight), as the spectral polynomials in the
/// `lambda_{b_i}`, and as the numerators/denominators of parameter scalars.
#[derive(Clone, Debug)]
pub struct Poly<C> {
    terms: BTreeMap<Mono, C>,
}

impl<C: Ring> Default for Poly<C> {
    fn default() -> Self {
        Poly { terms: BTreeMap::new() }
    }
}

impl<C: Ring> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() == other.terms.len()
            && self.terms.iter().zip(other.terms.iter()).all(|(a, b)| a == b)
        {
            return true;
        }
        (self.clone() - other.clone()).is_zero()
    }
}

impl<C: Ring> Poly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Mono::one(), c)
    }

    pub fn monomial(m: Mono, c: C) -> Self {
        let mut p = Poly::default();
        p.add_term(m, c);
        p
    }

    /// `x_i^e` with unit coefficient.
    pub fn var_pow(i: usize, e: i32) -> Self {
        Self::monomial(Mono::var(i, e), C::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, C)>>(it: I) -> Self {
        let mut p = Poly::default();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Mono, C)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &Mono) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, m: &Mono) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Mono, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Largest monomial in the lexicographic order.
    pub fn leading(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&Mono, &C)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::default();
        }
        Poly::from_terms(self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())))
    }

    /// Multiply by the monomial `c * x^m`.
    pub fn shift(&self, m: &Mono, c: &C) -> Self {
        Poly::from_terms(self.terms.iter().map(|(k, a)| (k.add(m), a.clone() * c.clone())))
    }

    /// Linear map defined on monomials: `x^k -> coeff(k) * x^{image(k)}`.
    pub fn map_monomials<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Mono) -> (Mono, C),
    {
        let mut out = Poly::default();
        for (k, a) in &self.terms {
            let (m, c) = f(k);
            out.add_term(m, a.clone() * c);
        }
        out
    }

    /// Linear map defined on monomials with polynomial images.
    pub fn map_linear<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Mono) -> Poly<C>,
    {
        let mut out = Poly::default();
        for (k, a) in &self.terms {
            for (m, c) in f(k).terms {
                out.add_term(m, a.clone() * c);
            }
        }
        out
    }

    pub fn map_coeffs<D: Ring, F: FnMut(&C) -> D>(&self, mut f: F) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    pub fn try_map_coeffs<D: Ring, F: FnMut(&C) -> Result<D>>(&self, mut f: F) -> Result<Poly<D>> {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Exponent negation `x^k -> x^{-k}`.
    pub fn invert_variables(&self) -> Self {
        Poly::from_terms(self.terms.iter().map(|(m, c)| (m.neg(), c.clone())))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Mono::one()))
    }

    pub fn constant_term(&self) -> C {
        self.coeff(&Mono::one())
    }

    /// Largest absolute exponent appearing.
    pub fn max_abs_exponent(&self) -> i32 {
        self.terms.keys().map(Mono::max_abs).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> i64 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// Substitute `x_i -> images[i]` in a polynomial with nonnegative exponents
    /// (negative exponents are allowed only where the image is a monomial unit).
    pub fn substitute(&self, images: &[Poly<C>]) -> Result<Self>
    where
        C: Coeff,
    {
        let mut cache: Vec<Vec<Poly<C>>> = vec![vec![Poly::one()]; images.len()];
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for i in 0..m.support_len() {
                let e = m.get(i);
                if e == 0 {
                    continue;
                }
                let img = images.get(i).ok_or_else(|| {
                    Error::Internal(format!("substitution missing image for variable {i}"))
                })?;
                let factor = if e > 0 {
                    let powers = &mut cache[i];
                    while powers.len() <= e as usize {
                        let next = powers.last().unwrap().clone() * img.clone();
                        powers.push(next);
                    }
                    powers[e as usize].clone()
                } else {
                    if !img.is_monomial() {
                        return Err(Error::Arithmetic(
                            "negative power of a non-monomial substitution".into(),
                        ));
                    }
                    let (mm, cc) = img.leading().unwrap();
                    let inv = Poly::monomial(mm.neg(), cc.try_inv()?);
                    let mut acc = Poly::one();
                    for _ in 0..(-e) {
                        acc = acc * inv.clone();
                    }
                    acc
                };
                term = term * factor;
            }
            out = out + term;
        }
        Ok(out)
    }
}

impl<C: Coeff> Poly<C> {
    /// Exact division `self = g * h`, returning `h`; fails loudly on a nonzero
    /// remainder. Works in the Laurent ring; when `polynomial` is set the
    /// quotient must also have nonnegative exponents.
    /// Per-variable minimum and maximum exponents over the support.
    fn exponent_range(&self) -> (Vec<i32>, Vec<i32>) {
        let vars = self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0);
        let mut lo = vec![i32::MAX; vars];
        let mut hi = vec![i32::MIN; vars];
        for m in self.terms.keys() {
            for i in 0..vars {
                lo[i] = lo[i].min(m.get(i));
                hi[i] = hi[i].max(m.get(i));
            }
        }
        (lo, hi)
    }

    pub fn exact_div_opts(&self, g: &Poly<C>, polynomial: bool) -> Result<Poly<C>> {
        if g.is_zero() {
            return Err(Error::Arithmetic("division by the zero polynomial".into()));
        }
        if self.is_zero() {
            return Ok(Poly::default());
        }
        let (g_lead_m, g_lead_c) = g.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let g_lead_inv = g_lead_c.try_inv()?;
        if g.is_monomial() {
            let q = self.shift(&g_lead_m.neg(), &g_lead_inv);
            if polynomial && q.terms.keys().any(|m| !m.is_nonnegative()) {
                return Err(Error::Divisibility("quotient is not a polynomial".into()));
            }
            return Ok(q);
        }
        let (f_lo, f_hi) = self.exponent_range();
        let (g_lo, g_hi) = g.exponent_range();
        let vars = f_lo.len().max(g_lo.len());
        let at = |v: &[i32], i: usize| v.get(i).copied().unwrap_or(0);
        let in_box = |m: &Mono| {
            (0..vars).all(|i| {
                let e = m.get(i);
                at(&f_lo, i) - at(&g_lo, i) <= e && e <= at(&f_hi, i) - at(&g_hi, i)
            }) && m.0.len() <= vars
        };
        let mut rem = self.clone();
        let mut quot = Poly::default();
        while let Some((m, c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = m.sub(&g_lead_m);
            if !in_box(&qm) || (polynomial && !qm.is_nonnegative()) {
                return Err(Error::Divisibility(format!(
                    "nonzero remainder with {} terms",
                    rem.len()
                )));
            }
            let qc = c * g_lead_inv.clone();
            rem = rem - g.shift(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    pub fn exact_div(&self, g: &Poly<C>) -> Result<Poly<C>> {
        self.exact_div_opts(g, false)
    }
}

impl<C: Ring> Zero for Poly<C> {
    fn zero() -> Self {
        Poly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Ring> One for Poly<C> {
    fn one() -> Self {
        Poly::constant(C::one())
    }
}

impl<C: Ring> Neg for Poly<C> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<C: Ring> Add for Poly<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        for (m, c) in small.terms {
            big.add_term(m, c);
        }
        big
    }
}

impl<C: Ring> Sub for Poly<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (m, c) in rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl<C: Ring> Mul for Poly<C> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.terms.is_empty() || rhs.terms.is_empty() {
            return Poly::default();
        }
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.add(mb), ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Ring> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..m.support_len() {
                let e = m.get(i);
                if e != 0 {
                    write!(f, "*x{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

impl<C: Ring> Ring for Poly<C> {
    fn from_rational(r: &BigRational) -> Self {
        Poly::constant(C::from_rational(r))
    }
}
