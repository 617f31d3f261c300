use std::f64::consts::PI;

use gauss_extremal::extremal::{
    dilate, error_best, error_majorant, error_minorant, eval_best_truncated, eval_majorant_truncated,
    eval_minorant_truncated, eval_odd, Approximant, Kind, Parity,
};
use gauss_extremal::special::{sin_pi, sinc, truncated_gaussian};
use gauss_extremal::Error;
use proptest::prelude::*;

fn theta3_series(lam: f64) -> f64 {
    1.0 + 2.0 * (1..40).map(|n| (-PI * lam * (n * n) as f64).exp()).sum::<f64>()
}

#[test]
fn closed_form_errors_at_one() {
    let t3 = theta3_series(1.0);
    assert!((error_minorant(1.0).unwrap().value - (1.0 - t3 / 2.0)).abs() < 1e-14);
    assert!((error_majorant(1.0).unwrap().value - t3 / 2.0).abs() < 1e-14);
    assert!((error_minorant(1.0).unwrap().value - 0.456_782_6).abs() < 1e-7);
    assert!((error_best(1.0).unwrap().value - 0.487_811_652_979_80).abs() < 1e-10);
}

#[test]
fn one_sided_errors_add_up() {
    for lam in [0.1, 1.0, 10.0] {
        let sum = error_minorant(lam).unwrap().value + error_majorant(lam).unwrap().value;
        assert!((sum - 1.0).abs() < 1e-14);
    }
}

#[test]
fn free_functions_match_the_approximant() {
    for x in [-2.3, 0.0, 0.4, 3.7] {
        let a = Approximant::new(Kind::BestApprox, Parity::Truncated, 1.0).unwrap();
        assert_eq!(eval_best_truncated(1.0, x).unwrap(), a.eval(x));
        let l = Approximant::new(Kind::Minorant, Parity::Truncated, 1.0).unwrap();
        assert_eq!(eval_minorant_truncated(1.0, x).unwrap(), l.eval(x));
        let m = Approximant::new(Kind::Majorant, Parity::Truncated, 1.0).unwrap();
        assert_eq!(eval_majorant_truncated(1.0, x).unwrap(), m.eval(x));
    }
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(eval_best_truncated(0.0, 1.0), Err(Error::Domain { .. })));
    assert!(matches!(error_best(-1.0), Err(Error::Domain { .. })));
    let a = Approximant::new(Kind::BestApprox, Parity::Truncated, 1.0).unwrap();
    assert!(dilate(a, 0.0).is_err());
}

#[test]
fn interpolation_at_integers() {
    for lam in [0.25, 1.0, 4.0] {
        for n in (-20..=20).filter(|&n| n != 0) {
            let x = n as f64;
            let g = truncated_gaussian(lam, x);
            assert!((eval_best_truncated(lam, x).unwrap() - g).abs() < 1e-12);
            assert!((eval_minorant_truncated(lam, x).unwrap() - g).abs() < 1e-12);
            assert!((eval_majorant_truncated(lam, x).unwrap() - g).abs() < 1e-12);
        }
    }
    assert!(eval_minorant_truncated(1.0, 0.0).unwrap().abs() < 1e-15);
    assert!((eval_majorant_truncated(1.0, 0.0).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn odd_functions_are_reflections() {
    for x in [0.3, 1.7, -2.2] {
        let k = eval_odd(Kind::BestApprox, 1.0, x).unwrap();
        let expected = eval_best_truncated(1.0, x).unwrap() - eval_best_truncated(1.0, -x).unwrap();
        assert!((k - expected).abs() < 1e-15);
        let l = eval_odd(Kind::Minorant, 1.0, x).unwrap();
        let expected = eval_minorant_truncated(1.0, x).unwrap() - eval_majorant_truncated(1.0, -x).unwrap();
        assert!((l - expected).abs() < 1e-15);
    }
}

#[test]
fn numeric_errors_match_closed_forms() {
    for kind in [Kind::BestApprox, Kind::Minorant, Kind::Majorant] {
        let a = Approximant::new(kind, Parity::Truncated, 1.0).unwrap();
        let numeric = a.l1_error_numeric(1e-9).unwrap().value;
        let closed = a.error().unwrap().value;
        let tol = if kind == Kind::BestApprox { 1e-6 } else { 1e-7 };
        assert!((numeric - closed).abs() < tol, "{kind:?} {numeric} {closed}");
    }
}

#[test]
fn odd_errors() {
    let k = Approximant::new(Kind::BestApprox, Parity::Odd, 1.0).unwrap();
    assert!((k.l1_error_numeric(1e-9).unwrap().value - 2.0 * error_best(1.0).unwrap().value).abs() < 1e-6);
    let l = Approximant::new(Kind::Minorant, Parity::Odd, 1.0).unwrap();
    assert!((l.l1_error_numeric(1e-9).unwrap().value - 1.0).abs() < 1e-7);
}

#[test]
fn dilation() {
    let a = Approximant::new(Kind::BestApprox, Parity::Truncated, 1.0).unwrap();
    let d = a.clone().dilate(2.0).unwrap();
    assert_eq!(d.exponential_type(), 2.0 * PI);
    assert_eq!(d.target_lam(), 4.0);
    assert_eq!(d.node(3), 1.5);
    assert!((d.error().unwrap().value - a.error().unwrap().value / 2.0).abs() < 1e-15);
    assert!((d.eval(0.35) - a.eval(0.7)).abs() < 1e-15);
    let numeric = d.l1_error_numeric(1e-9).unwrap().value;
    assert!((numeric - a.error().unwrap().value / 2.0).abs() < 1e-6);
    let t = Approximant::for_target(Kind::Minorant, Parity::Truncated, 1.0, 2.0).unwrap();
    assert_eq!(t.lam(), 0.25);
    assert_eq!(t.target_lam(), 1.0);
    for k in [1, 3, -5] {
        let x = t.node(k);
        assert!((t.eval(x) - t.target(x)).abs() < 1e-12);
    }
}

proptest! {
    #[test]
    fn sign_condition(x in -8.0f64..8.0, lam in 0.2f64..5.0) {
        let v = sin_pi(x) * (truncated_gaussian(lam, x) - eval_best_truncated(lam, x).unwrap());
        prop_assert!(v >= -1e-10);
    }

    #[test]
    fn sandwich(x in -8.0f64..8.0, lam in 0.2f64..5.0) {
        let g = truncated_gaussian(lam, x);
        prop_assert!(eval_minorant_truncated(lam, x).unwrap() <= g + 1e-10);
        prop_assert!(eval_majorant_truncated(lam, x).unwrap() >= g - 1e-10);
    }

    #[test]
    fn majorant_exceeds_minorant_by_sinc_squared(x in -8.0f64..8.0, lam in 0.2f64..5.0) {
        let gap = eval_majorant_truncated(lam, x).unwrap() - eval_minorant_truncated(lam, x).unwrap();
        prop_assert!((gap - sinc(x).powi(2)).abs() < 1e-13);
    }
}
