use daha_lab::rank1::{self, SigmaVariant, C64};
use proptest::prelude::*;

#[test]
fn decoupled_system_at_k_zero() {
    let (u, v) = rank1::g_at(C64::new(0.7, 0.0), 0.0, 1.0, 1e-10).unwrap();
    assert!((u - C64::new(0.7f64.exp(), 0.0)).norm() < 1e-8);
    assert!((v - C64::new((-0.7f64).exp(), 0.0)).norm() < 1e-8);
}

#[test]
fn k1_symmetric_solution_is_the_sinh_ratio() {
    let l = C64::new(0.3, 0.0);
    let sol = rank1::solve_g(l, 1.0, &[1.0], 1e-10).unwrap();
    let want = (0.3f64).sinh() / (0.6 * (0.5f64).sinh());
    assert!((sol.symmetric()[0] - want).norm() < 1e-6);
}

#[test]
fn intertwiner_examples() {
    assert!(rank1::intertwiner_s1_residual(C64::new(0.3, 0.0), 1.0, 0.8, 1e-8).unwrap() <= 5e-7);
    assert!(rank1::intertwiner_s0_residual(C64::new(0.0, 0.2), 1.0, 0.5, 1e-8).unwrap() <= 5e-7);
    assert!(rank1::intertwiner_s1_residual(C64::new(0.45, 0.1), 0.0, 1.3, 1e-10).unwrap() <= 1e-10);
}

#[test]
fn main_theorem_examples() {
    assert!(rank1::main_theorem_residual(C64::new(0.4, 0.0), 1.0, 1.0, 1e-8).unwrap() <= 1e-6);
    assert!(rank1::main_theorem_residual(C64::new(0.3, 0.2), 0.5, 0.7, 1e-8).unwrap() <= 1e-6);
    assert!(rank1::main_theorem_residual(C64::new(0.3, 0.0), 0.0, 1.0, 1e-10).unwrap() <= 1e-10);
}

#[test]
fn gamma_poles_are_refused() {
    assert!(rank1::ln_gamma(C64::new(-2.0, 0.0)).is_err());
    assert!(rank1::eval_sigma(C64::new(0.5, 0.0), 1.0, SigmaVariant::Asymmetric).is_ok());
    assert!(rank1::intertwiner_s1_residual(C64::new(0.0, 0.0), 1.0, 1.0, 1e-8).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sigma_matches_recurrence(re in -2.5f64..2.5, im in -2.5f64..2.5, k in 1u32..3) {
        let la = C64::new(re, im);
        prop_assume!((0..4).all(|n| (la - n as f64).norm() > 0.05 && (la + n as f64).norm() > 0.05));
        let got = rank1::eval_sigma(la, k as f64, SigmaVariant::Asymmetric).unwrap();
        let want = rank1::sigma_recurrence(la, k);
        prop_assert!((got - want).norm() <= 1e-11 * want.norm().max(1.0));
    }

    #[test]
    fn symmetric_eigen_residual_within_contract(l in 0.1f64..2.0, k in 0.25f64..2.0) {
        let e = rank1::symmetric_eigen(C64::new(l, 0.0), k, 0.25, 2.0, 0.005, 1e-11).unwrap();
        prop_assert!(e.residual <= e.threshold, "residual {} threshold {}", e.residual, e.threshold);
    }

    #[test]
    fn symmetric_part_is_even_in_lambda(l in 0.1f64..1.5, k in 0.25f64..2.0, s in 0.3f64..2.0) {
        let (u, v) = rank1::g_at(C64::new(l, 0.0), k, s, 1e-10).unwrap();
        let (um, vm) = rank1::g_at(C64::new(-l, 0.0), k, s, 1e-10).unwrap();
        prop_assert!(((u + v) - (um + vm)).norm() / 2.0 <= 1e-7);
    }
}
