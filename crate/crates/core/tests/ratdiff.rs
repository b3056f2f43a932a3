use daha_lab::coeffs::{BigRational, Mono, Poly, Zero};
use daha_lab::ratdiff::{self, lambda_int, LambdaPoly, RatDiff};
use daha_lab::roots::{RootSystem, RootType};
use daha_lab::trigdunkl::KappaParams;
use proptest::prelude::*;

fn systems() -> Vec<RootSystem> {
    [(RootType::A, 1), (RootType::A, 2), (RootType::B, 2), (RootType::C, 2), (RootType::G, 2)]
        .into_iter()
        .map(|(k, n)| RootSystem::new(k, n).unwrap())
        .collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(n: usize, terms: &[(i64, i64, i64)]) -> LambdaPoly {
    Poly::from_terms(terms.iter().map(|&(a, b, c)| {
        let e: Vec<i64> = [a, b].into_iter().take(n).collect();
        (Mono::from_i64(&e), rat(c, 1))
    }))
}

#[test]
fn a1_lambda_one_routes_agree_on_lambda_squared() {
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let rd = RatDiff::new(&rs, KappaParams::uniform(rat(3, 5)));
    let l = lambda_int(&[1]);
    // lambda^2 is not invariant under lambda -> -lambda; use its symmetrization
    let f = l.clone() * l;
    assert!(rd.is_symmetric(&f));
    assert_eq!(rd.lambda_r(1, &f).unwrap(), rd.m_r_of_delta(1, &f).unwrap());
    let one = Poly::constant(rat(1, 1));
    assert_eq!(rd.lambda_r(1, &one).unwrap(), Poly::constant(rat(2, 1)));
    assert!(rd.lambda_r(1, &lambda_int(&[1])).is_err());
}

#[test]
fn a2_braid_and_delta_commute() {
    let rs = RootSystem::new(RootType::A, 2).unwrap();
    let rd = RatDiff::new(&rs, KappaParams::uniform(rat(-2, 3)));
    let (sq, br) = ratdiff::hecke_relations(&rd, 2).unwrap();
    assert!(sq.ok() && br.ok());
    assert!(ratdiff::delta_commute(&rd, 2).unwrap().ok());
}

#[test]
fn sigma_unitarity_beyond_rank_one() {
    let rs = RootSystem::new(RootType::A, 2).unwrap();
    for k in 1..=2 {
        let rd = RatDiff::new(&rs, KappaParams::uniform(rat(k, 1)));
        assert!(ratdiff::sigma_unitarity(&rd, 1).unwrap().ok(), "k = {k}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn s_j_squares_to_identity(sys in 0usize..5, k in (-9i64..10, 1i64..6), f in prop::collection::vec((0i64..4, 0i64..4, -5i64..6), 1..5)) {
        let rs = &systems()[sys];
        let rd = RatDiff::new(rs, KappaParams::uniform(rat(k.0, k.1)));
        let f = poly(rs.rank, &f);
        for j in 0..=rs.rank {
            let once = rd.s(j, &f).unwrap();
            prop_assert_eq!(rd.s(j, &once).unwrap(), f.clone(), "S_{}", j);
        }
    }

    #[test]
    fn s_relations_hold(sys in 0usize..5, k in (-9i64..10, 1i64..6), f in prop::collection::vec((0i64..3, 0i64..3, -5i64..6), 1..4)) {
        let rs = &systems()[sys];
        let rd = RatDiff::new(rs, KappaParams::uniform(rat(k.0, k.1)));
        let f = poly(rs.rank, &f);
        for j in 0..=rs.rank {
            for i in 1..=rs.rank {
                prop_assert!(rd.relation_residual_s(j, &rs.b(i), &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn difference_limit_matches(k in (-9i64..10, 1i64..6), f in prop::collection::vec((0i64..3, 0i64..3, -5i64..6), 1..4)) {
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        let rd = RatDiff::new(&rs, KappaParams::uniform(rat(k.0, k.1)));
        let f = poly(2, &f.into_iter().filter(|t| t.0 + t.1 <= 2).collect::<Vec<_>>());
        for j in 0..=2 {
            prop_assert!(rd.difference_limit_residual(j, &f, 3).unwrap().is_zero());
        }
    }
}
