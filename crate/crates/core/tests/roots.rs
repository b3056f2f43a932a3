use daha_lab::coeffs::Q;
use daha_lab::roots::{ReducedWord, RootSystem, RootType};
use daha_lab::suites;
use proptest::prelude::*;

fn systems() -> Vec<RootSystem> {
    [(RootType::A, 1), (RootType::A, 2), (RootType::B, 2), (RootType::C, 2), (RootType::G, 2), (RootType::A, 3)]
        .into_iter()
        .map(|(k, n)| RootSystem::new(k, n).unwrap())
        .collect()
}

#[test]
fn a1_minuscule_data() {
    let rs = RootSystem::new(RootType::A, 1).unwrap();
    let m = rs.minuscule();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].r, 1);
    assert_eq!(m[0].b_r, vec![1]);
    assert_eq!(m[0].omega, rs.s(1));
    assert_eq!(m[0].pi, rs.translation(&[1]).mul(&rs.s(1)));
}

#[test]
fn reflection_negates_its_root() {
    for rs in systems() {
        for (i, _) in rs.positive_roots() {
            assert_eq!(rs.apply_root(&rs.reflection(i), i), rs.neg_root(i));
        }
    }
}

#[test]
fn a2_translation_word_rebuilds() {
    let rs = RootSystem::new(RootType::A, 2).unwrap();
    let b1 = rs.translation(&[1, 0]);
    let rw = rs.reduced_word(&b1).unwrap();
    assert_eq!(rw.r, 1);
    assert_eq!(rw.word.len(), 2);
    assert_eq!(rs.from_word(&rw), b1);
    // no shorter word times any pi_r gives b_1
    for r in [0, 1, 2] {
        for j in 0..=2 {
            assert_ne!(rs.from_word(&ReducedWord { r, word: vec![j] }), b1);
        }
    }
}

#[test]
fn identity_has_empty_word() {
    for rs in systems() {
        let rw = rs.reduced_word(&rs.identity()).unwrap();
        assert_eq!(rw, ReducedWord { r: 0, word: vec![] });
        assert!(rs.ell(&rs.identity()).is_empty());
    }
}

#[test]
fn roots_suite_passes() {
    for rs in systems() {
        for c in suites::roots(&rs, 3) {
            assert!(c.passed(), "{} {}: {:?}", rs.label(), c.name, c.residual);
        }
    }
}

#[test]
fn diagram_orders() {
    let g2 = RootSystem::new(RootType::G, 2).unwrap();
    assert_eq!(suites::diagram_order(&g2, 1, 2), Some(6));
    let a1 = RootSystem::new(RootType::A, 1).unwrap();
    assert_eq!(suites::diagram_order(&a1, 0, 1), None);
    let b2 = RootSystem::new(RootType::B, 2).unwrap();
    assert_eq!(suites::diagram_order(&b2, 1, 2), Some(4));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_reflections_are_involutions(
        sys in 0usize..6,
        z in prop::collection::vec((-20i64..20, 1i64..7), 3),
        zeta in (-20i64..20, 1i64..7),
    ) {
        let rs = &systems()[sys];
        let z: Vec<Q> = z.iter().take(rs.rank).map(|&(a, b)| Q::new(a, b)).collect();
        let zeta = Q::new(zeta.0, zeta.1);
        for j in 0..=rs.rank {
            let g = rs.s(j).mul(&rs.s(j));
            prop_assert_eq!(rs.apply_affine_vector(&g, &z, zeta), (z.clone(), zeta));
        }
    }

    #[test]
    fn words_rebuild_and_lengths_subadd(
        sys in 0usize..6,
        w1 in prop::collection::vec(0usize..4, 0..9),
        w2 in prop::collection::vec(0usize..4, 0..9),
    ) {
        let rs = &systems()[sys];
        let clip = |w: &[usize]| w.iter().map(|j| j % (rs.rank + 1)).collect::<Vec<_>>();
        let (a, b) = (rs.word(&clip(&w1)), rs.word(&clip(&w2)));
        let ab = a.mul(&b);
        prop_assert!(rs.length(&ab) <= rs.length(&a) + rs.length(&b));
        prop_assert!(rs.length(&a) <= w1.len());
        let rw = rs.reduced_word(&ab).unwrap();
        prop_assert_eq!(rw.word.len(), rs.length(&ab));
        prop_assert_eq!(rs.from_word(&rw), ab.clone());
        prop_assert_eq!(rs.length(&ab.inverse()), rs.length(&ab));
    }
}
