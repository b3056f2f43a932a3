use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{q_to_big, Coeff, HSeries, ParamScalar, Q, Q_ROOT_DENOM};
use crate::error::{Error, Result};

/// Root length class, `nu = (alpha, alpha)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthClass {
    /// `nu = 2`
    Long,
    /// `nu = 1`
    Short,
    /// `nu = 2/3`
    Third,
}

impl LengthClass {
    pub const ALL: [LengthClass; 3] = [LengthClass::Long, LengthClass::Short, LengthClass::Third];

    pub fn from_nu(nu: Q) -> Result<Self> {
        if nu == Q::from_integer(2) {
            Ok(LengthClass::Long)
        } else if nu == Q::from_integer(1) {
            Ok(LengthClass::Short)
        } else if nu == Q::new(2, 3) {
            Ok(LengthClass::Third)
        } else {
            Err(Error::Internal(format!("unexpected squared root length {nu}")))
        }
    }

    pub fn nu(self) -> Q {
        match self {
            LengthClass::Long => Q::from_integer(2),
            LengthClass::Short => Q::from_integer(1),
            LengthClass::Third => Q::new(2, 3),
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Values of `q^(1/2m)` and `t(nu)^(1/2)` in a coefficient ring.
#[derive(Clone, Debug)]
pub struct Params<C> {
    pub two_m: i64,
    q_root: C,
    q_root_inv: C,
    t_half: [C; 3],
    t_half_inv: [C; 3],
}

impl<C: Coeff> Params<C> {
    pub fn from_values(two_m: i64, q_root: C, t_half: [C; 3]) -> Result<Self> {
        let q_root_inv = q_root.try_inv()?;
        let [a, b, c] = &t_half;
        let t_half_inv = [a.try_inv()?, b.try_inv()?, c.try_inv()?];
        Ok(Params { two_m, q_root, q_root_inv, t_half, t_half_inv })
    }

    /// `q^e` for `e` in `(1/2m) Z`.
    pub fn q_pow(&self, e: Q) -> Result<C> {
        let k = e * self.two_m;
        if !k.is_integer() {
            return Err(Error::Arithmetic(format!(
                "q exponent {e} is not in (1/{})Z",
                self.two_m
            )));
        }
        let k = k.to_integer();
        Ok(if k >= 0 { self.q_root.pow(k as u64) } else { self.q_root_inv.pow(k.unsigned_abs()) })
    }

    pub fn q(&self) -> C {
        self.q_root.pow(self.two_m as u64)
    }

    pub fn t_half(&self, c: LengthClass) -> &C {
        &self.t_half[c.index()]
    }

    pub fn t_half_inv(&self, c: LengthClass) -> &C {
        &self.t_half_inv[c.index()]
    }

    pub fn t(&self, c: LengthClass) -> C {
        self.t_half(c).clone() * self.t_half(c).clone()
    }

    /// `t^(1/2) - t^(-1/2)`.
    pub fn hecke_gap(&self, c: LengthClass) -> C {
        self.t_half(c).clone() - self.t_half_inv(c).clone()
    }
}

fn check_two_m(two_m: i64) -> Result<()> {
    if two_m <= 0 || Q_ROOT_DENOM % two_m != 0 {
        return Err(Error::Unsupported(format!("q^(1/{two_m}) is not representable")));
    }
    Ok(())
}

impl Params<ParamScalar> {
    /// Fully symbolic parameters.
    pub fn symbolic(two_m: i64) -> Result<Self> {
        check_two_m(two_m)?;
        let q_root = ParamScalar::u_pow(Q_ROOT_DENOM / two_m);
        let t = [0, 1, 2].map(|i| ParamScalar::t_half_pow(i, 1));
        Params::from_values(two_m, q_root, t)
    }

    /// Symbolic `q` with `t_alpha = q_alpha^k`, `q_alpha = q^(2/nu)`, so `t(nu)^(1/2) = q^(k/nu)`.
    pub fn t_as_q_power(two_m: i64, k: i64) -> Result<Self> {
        check_two_m(two_m)?;
        let q_root = ParamScalar::u_pow(Q_ROOT_DENOM / two_m);
        let mut t = Vec::new();
        for c in LengthClass::ALL {
            t.push(ParamScalar::q_pow(Q::from_integer(k) / c.nu())?);
        }
        let t: [ParamScalar; 3] = t.try_into().unwrap();
        Params::from_values(two_m, q_root, t)
    }
}

fn random_unit<R: rand::Rng>(rng: &mut R) -> BigRational {
    loop {
        let n: i64 = rng.gen_range(-40..=40);
        let d: i64 = rng.gen_range(1..=40);
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        if !r.is_zero() && r != BigRational::one() && r != -BigRational::one() {
            return r;
        }
    }
}

impl Params<BigRational> {
    /// Random exact rational specialization of all symbols.
    pub fn generic<R: rand::Rng>(two_m: i64, rng: &mut R) -> Result<Self> {
        let q_root = random_unit(rng);
        let t = [random_unit(rng), random_unit(rng), random_unit(rng)];
        Params::from_values(two_m, q_root, t)
    }

    /// Random rationals for use as specialized `kappa`/`k` values.
    pub fn random_kappas<R: rand::Rng>(rng: &mut R) -> [BigRational; 3] {
        [random_unit(rng), random_unit(rng), random_unit(rng)]
    }
}

impl Params<HSeries> {
    /// `q = exp(h)`, `t(nu)^(1/2) = exp(h kappa_nu / 2)`, modulo `h^(order+1)`.
    pub fn exponential(two_m: i64, kappa: &[BigRational; 3], order: i64) -> Result<Self> {
        let q_root = HSeries::exp_linear(&q_to_big(Q::new(1, two_m)), order);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let t = [0, 1, 2].map(|i| HSeries::exp_linear(&(kappa[i].clone() * half.clone()), order));
        Params::from_values(two_m, q_root, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn symbolic_q_powers() {
        let p = Params::symbolic(4).unwrap();
        assert_eq!(p.q_pow(Q::new(1, 2)).unwrap(), ParamScalar::q_pow(Q::new(1, 2)).unwrap());
        assert!(p.q_pow(Q::new(1, 8)).is_err());
        assert_eq!(p.q(), ParamScalar::q_pow(Q::from_integer(1)).unwrap());
    }

    #[test]
    fn generic_points_avoid_trivial_values() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let p = Params::generic(2, &mut rng).unwrap();
        for c in LengthClass::ALL {
            assert!(!p.hecke_gap(c).is_zero());
        }
    }

    #[test]
    fn exponential_parameters() {
        let k = [BigRational::from_integer(3.into()), BigRational::one(), BigRational::one()];
        let p = Params::exponential(2, &k, 2).unwrap();
        let t = p.t(LengthClass::Long);
        assert_eq!(t.coeff(1).unwrap(), BigRational::from_integer(3.into()));
    }
}
