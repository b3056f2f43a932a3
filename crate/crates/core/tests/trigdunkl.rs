use daha_lab::coeffs::{q_to_big, BigRational, LengthClass, Mono, Poly, Zero};
use daha_lab::roots::{RootSystem, RootType};
use daha_lab::trigdunkl::{self, differential_limit_residual, Dunkl, KappaParams, RPoly};
use proptest::prelude::*;

fn systems() -> Vec<RootSystem> {
    [(RootType::A, 1), (RootType::A, 2), (RootType::B, 2), (RootType::G, 2)]
        .into_iter()
        .map(|(k, n)| RootSystem::new(k, n).unwrap())
        .collect()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(n: usize, terms: &[(i64, i64, i64)]) -> RPoly {
    Poly::from_terms(terms.iter().map(|&(a, b, c)| {
        let e: Vec<i64> = [a, b].into_iter().take(n).collect();
        (Mono::from_i64(&e), rat(c, 1))
    }))
}

fn kappa() -> impl Strategy<Value = KappaParams> {
    ((-9i64..10, 1i64..6), (-9i64..10, 1i64..6)).prop_map(|((a, b), (c, d))| KappaParams::new([rat(a, b), rat(c, d), rat(a + c, b * d)]))
}

#[test]
fn eigenvectors_from_intertwiner_chains() {
    let rs = RootSystem::new(RootType::A, 2).unwrap();
    let d = Dunkl::new(&rs, KappaParams::uniform(rat(2, 7)));
    for c in daha_lab::polyrep::monomial_box(2, 1) {
        let (e, spec) = d.eigenvector(&c).unwrap();
        for i in 1..=2 {
            let b = rs.b(i);
            assert_eq!(d.apply(&b, &e), e.scale(&spec[i - 1]), "E_{c:?}");
        }
    }
}

#[test]
fn tau_is_self_adjoint_at_integer_k() {
    for rs in systems().into_iter().take(3) {
        // k_alpha = kappa_alpha nu_alpha / 2 = 1 on every root length
        let kp = KappaParams::new(LengthClass::ALL.map(|c| rat(1, 1) / q_to_big(c.nu()) * rat(2, 1)));
        let d = Dunkl::new(&rs, kp);
        let f = trigdunkl::self_adjointness(&d, 1).unwrap();
        assert!(f.ok(), "{}: {:?}", rs.label(), f.first);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn dunkl_operators_commute(sys in 0usize..4, kp in kappa(), f in prop::collection::vec((-2i64..3, -2i64..3, -4i64..5), 1..4)) {
        let rs = &systems()[sys];
        let d = Dunkl::new(rs, kp);
        let f = poly(rs.rank, &f);
        for i in 1..=rs.rank {
            for j in i + 1..=rs.rank {
                let (bi, bj) = (rs.b(i), rs.b(j));
                let res = d.apply(&bi, &d.apply(&bj, &f)) - d.apply(&bj, &d.apply(&bi, &f));
                prop_assert!(res.is_zero());
            }
        }
    }

    #[test]
    fn reflection_relations(sys in 0usize..4, kp in kappa(), f in prop::collection::vec((-2i64..3, -2i64..3, -4i64..5), 1..4)) {
        let rs = &systems()[sys];
        let d = Dunkl::new(rs, kp);
        let f = poly(rs.rank, &f);
        for j in 0..=rs.rank {
            for i in 1..=rs.rank {
                prop_assert!(d.relation_residual_s(j, &rs.b(i), &f).is_zero(), "s_{}", j);
            }
        }
        for r in rs.special_nodes() {
            for i in 1..=rs.rank {
                prop_assert!(d.relation_residual_pi(r, &rs.b(i), &f).is_zero(), "pi_{}", r);
            }
        }
    }

    #[test]
    fn differential_limit_in_a2(kp in kappa(), f in prop::collection::vec((0i64..3, 0i64..3, -4i64..5), 1..4)) {
        let rs = RootSystem::new(RootType::A, 2).unwrap();
        let d = Dunkl::new(&rs, kp);
        let f = poly(2, &f.into_iter().filter(|t| t.0 + t.1 <= 2).collect::<Vec<_>>());
        for i in 1..=2 {
            prop_assert!(differential_limit_residual(&d, &rs.b(i), &f, 2).unwrap().is_zero());
        }
    }
}
