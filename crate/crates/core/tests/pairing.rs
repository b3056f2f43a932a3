use daha_lab::coeffs::{One, ParamScalar, Zero};
use daha_lab::pairing::{mu0_series, pairing_mu, unitarity_residual, MuSeries};
use daha_lab::polyrep::{x, Gen, LaurentPoly, PolyOp, PolyRep};
use daha_lab::roots::{RootSystem, RootType};
use daha_lab::coeffs::Params;

fn setup(rs: &RootSystem) -> (PolyRep<'_, ParamScalar>, MuSeries) {
    let rep = PolyRep::new(rs, Params::symbolic(rs.two_m()).unwrap()).unwrap();
    let mu = mu0_series(rs, 9, 12).unwrap();
    (rep, mu)
}

#[test]
fn a1_generators_are_unitary_to_order_8() {
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let (rep, mu) = setup(&rs);
    let one = LaurentPoly::<ParamScalar>::one();
    let x1 = x::<ParamScalar>(&[1]);
    let cases = [
        (PolyOp::gen(Gen::T(1)), one.clone(), x1.clone()),
        (PolyOp::gen(Gen::Y(vec![1])), x1.clone(), x1.clone()),
        (PolyOp::gen(Gen::X(vec![1])), x1.clone(), one.clone() + x1.clone()),
        (PolyOp::gen(Gen::T(0)), x1.clone(), one.clone()),
        (PolyOp::gen(Gen::Pi(1)), x1.clone(), one.clone()),
    ];
    for (op, f, g) in cases {
        let r = unitarity_residual(&rep, &mu, &op, &f, &g, 8).unwrap();
        assert!(r.is_zero(), "{op:?}: {r:?}");
    }
}

#[test]
fn off_lattice_pairing_vanishes() {
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let (_, mu) = setup(&rs);
    let one = LaurentPoly::<ParamScalar>::one();
    assert!(pairing_mu(&mu, &one, &x(&[1]), 8).unwrap().is_zero());
}

#[test]
fn wrong_star_breaks_unitarity() {
    // T_1 paired against itself instead of its inverse
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let (rep, mu) = setup(&rs);
    let (f, g) = (x::<ParamScalar>(&[1]), x::<ParamScalar>(&[1]));
    let op = PolyOp::gen(Gen::T(1));
    let lhs = pairing_mu(&mu, &op.apply(&rep, &f).unwrap(), &g, 6).unwrap();
    let wrong = pairing_mu(&mu, &f, &op.apply(&rep, &g).unwrap(), 6).unwrap();
    assert!(!(lhs.clone() - wrong).is_zero());
    let right = pairing_mu(&mu, &f, &op.star().unwrap().apply(&rep, &g).unwrap(), 6).unwrap();
    assert!((lhs - right).is_zero());
}

#[test]
fn cap_too_small_is_reported() {
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let mu = mu0_series(&rs, 2, 4).unwrap();
    assert!(pairing_mu(&mu, &x(&[-12]), &LaurentPoly::<ParamScalar>::one(), 2).is_err());
}
