use daha_lab::coeffs::{BigRational, Coeff, Mono, One, ParamScalar, Poly, Q, Series, Star, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

#[test]
fn hecke_factor_times_geometric_ratio() {
    let th = ParamScalar::t_half_pow(0, 1);
    let t = ParamScalar::t_half_pow(0, 2);
    let gap = th.clone() - th.try_inv().unwrap();
    let ratio = t.clone() * (ParamScalar::one() - t).try_inv().unwrap();
    assert_eq!(gap * ratio, -th);
}

#[test]
fn quarter_powers_of_q_add() {
    let a = ParamScalar::q_pow(Q::new(1, 4)).unwrap();
    assert_eq!(a.clone() * a, ParamScalar::q_pow(Q::new(1, 2)).unwrap());
}

#[test]
fn laurent_quotient() {
    let x = |e: i32| Poly::<BigRational>::var_pow(0, e);
    let num = x(-1) - x(1);
    let den = x(2) - Poly::one();
    assert_eq!(num.exact_div(&den).unwrap(), -x(-1));
    assert!((x(2) + Poly::one()).exact_div(&(x(1) - Poly::one())).is_err());
}

#[test]
fn bivariate_remainder_is_reported() {
    let one = || rat(1, 1);
    let f = Poly::from_terms([(Mono::new([1, 1]), one()), (Mono::one(), one())]);
    let g = Poly::from_terms([(Mono::new([1, 0]), one()), (Mono::new([0, 1]), one())]);
    assert!(f.exact_div(&g).is_err());
    let h = Poly::from_terms([(Mono::new([0, -1]), one()), (Mono::new([2, 0]), rat(-3, 2))]);
    assert_eq!((g.clone() * h.clone()).exact_div(&g).unwrap(), h);
}

#[test]
fn exponential_quotient_series() {
    // (e^h - 1) / h = 1 + h/2 + h^2/6 + ...
    let e = Series::<BigRational>::exp_linear(&BigRational::one(), 4) - Series::exact([(0, BigRational::one())]);
    let q = e.shift(-1).truncate(3);
    assert_eq!(q, Series::with_prec([(0, rat(1, 1)), (1, rat(1, 2)), (2, rat(1, 6))], Some(3)));
}

proptest! {
    #[test]
    fn series_inverse_is_inverse(c0 in 1i64..9, rest in prop::collection::vec(-9i64..9, 0..6)) {
        let mut terms = vec![(0, rat(c0, 1))];
        terms.extend(rest.iter().enumerate().map(|(i, &c)| (i as i64 + 1, rat(c, 1))));
        let s = Series::with_prec(terms, Some(8));
        let prod = s.clone() * s.invert().unwrap();
        prop_assert_eq!(prod, Series::with_prec([(0, BigRational::one())], Some(8)));
    }

    #[test]
    fn star_is_an_involution(a in -3i32..4, b in -3i32..4, n in -5i64..5) {
        let x = ParamScalar::t_half_pow(0, a) * ParamScalar::q_pow(Q::new(n, 4)).unwrap()
            + ParamScalar::t_half_pow(1, b);
        prop_assert_eq!(x.star().star(), x);
    }

    #[test]
    fn division_undoes_multiplication(
        f in prop::collection::vec((-3i32..4, -5i64..6), 1..5),
        g in prop::collection::vec((-3i32..4, -5i64..6), 1..4),
    ) {
        let mk = |v: &[(i32, i64)]| Poly::from_terms(v.iter().map(|&(e, c)| (Mono::new([e]), rat(c, 1))));
        let (f, g) = (mk(&f), mk(&g));
        prop_assume!(!g.is_zero());
        prop_assert_eq!((f.clone() * g.clone()).exact_div(&g).unwrap(), f);
    }
}
