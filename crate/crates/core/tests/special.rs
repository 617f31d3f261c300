use std::f64::consts::PI;

use gauss_extremal::special::{
    dawson, ft_truncated_gaussian, gaussian, gaussian_prime, odd_gaussian, theta1, theta2, theta2_dz_imag, theta3,
    theta3_dz, truncated_gaussian, Theta, ThetaRepr,
};
use gauss_extremal::{quadrature, Error};
use proptest::prelude::*;

#[test]
fn gaussian_values() {
    assert_eq!(gaussian(1.0, 0.0), 1.0);
    assert_eq!(gaussian_prime(0.7, 0.0), 0.0);
    assert!((gaussian_prime(1.0, 1.0) + 2.0 * PI * (-PI).exp()).abs() < 1e-15);
    assert_eq!(truncated_gaussian(2.0, 0.0), 0.5);
    assert_eq!(odd_gaussian(2.0, 0.0), 0.0);
}

#[test]
fn theta3_at_i_matches_series() {
    let series: f64 = 1.0 + 2.0 * (1..20).map(|n| (-PI * (n * n) as f64).exp()).sum::<f64>();
    let v = theta3(0.0, 1.0).unwrap();
    assert!((v - series).abs() < 1e-15);
    assert!((v - 1.086_434_811_213_308).abs() < 1e-14);
}

#[test]
fn theta_functions_reject_bad_modulus() {
    for lam in [0.0, -1.0, f64::NAN] {
        assert!(matches!(theta1(0.1, lam), Err(Error::Domain { .. })));
        assert!(matches!(theta3(0.1, lam), Err(Error::Domain { .. })));
    }
}

#[test]
fn theta2_log_derivative_strip() {
    assert!(theta2_dz_imag(0.6, 1.0).is_err());
    assert!(theta2_dz_imag(-0.5, 1.0).is_err());
    assert!(theta2_dz_imag(-0.3, 1.0).unwrap() > 0.0);
    assert_eq!(theta2_dz_imag(0.0, 1.0).unwrap(), 0.0);
}

#[test]
fn theta2_log_derivative_matches_finite_difference() {
    let th = Theta::new(1.5).unwrap();
    for x in [-0.5, -0.2, 0.1] {
        let h = 1e-5;
        let fd = (th.theta2_imag(x + h) - th.theta2_imag(x - h)) / (2.0 * h);
        let d = th.theta2_dz_imag(x).unwrap();
        assert!((fd - d).abs() < 1e-8 * (1.0 + d.abs()), "x={x} fd={fd} d={d}");
    }
}

#[test]
fn theta2_at_zero_decreases_along_the_inverse_modulus() {
    // λ ↦ θ₂(0, i/λ) is decreasing
    let a = theta2(0.0, 1.0 / 0.5).unwrap();
    let b = theta2(0.0, 1.0).unwrap();
    assert!(a > b);
}

#[test]
fn theta3_derivative_vanishes_at_half_periods() {
    for lam in [0.3, 1.0, 3.0] {
        assert!(theta3_dz(0.0, lam).unwrap().abs() < 1e-15);
        assert!(theta3_dz(0.5, lam).unwrap().abs() < 1e-12);
    }
}

#[test]
fn ft_against_quadrature() {
    let pts: Vec<f64> = (0..=32).map(|k| 0.25 * k as f64).collect();
    for t in [0.0, 0.5, 1.5] {
        let re = quadrature::Adaptive::new(1e-14)
            .integrate_over(|x| gaussian(1.0, x) * (2.0 * PI * t * x).cos(), &pts)
            .unwrap()
            .value;
        let im = -quadrature::Adaptive::new(1e-14)
            .integrate_over(|x| gaussian(1.0, x) * (2.0 * PI * t * x).sin(), &pts)
            .unwrap()
            .value;
        let v = ft_truncated_gaussian(1.0, t);
        assert!((v.re - re).abs() < 1e-9 && (v.im - im).abs() < 1e-9, "t={t}");
    }
    let v = ft_truncated_gaussian(4.0, 0.0);
    assert_eq!(v.im, 0.0);
    assert!((v.re - 0.25).abs() < 1e-16);
    assert!(ft_truncated_gaussian(1.0, 0.5).norm() <= 0.5 + 0.5);
}

#[test]
fn dawson_values() {
    assert_eq!(dawson(0.0), 0.0);
    assert!(dawson(1.0) > 0.5);
    assert!(dawson(2.0) > 0.3);
    assert!((dawson(1.0) - 0.538_079_506_912_768_4).abs() < 1e-12);
    assert_eq!(dawson(-1.5), -dawson(1.5));
}

#[test]
fn dawson_derivative_relation() {
    for x in [0.5, 1.0, 3.0] {
        let h = 1e-5;
        let fd = (dawson(x + h) - dawson(x - h)) / (2.0 * h);
        assert!((fd - (1.0 - 2.0 * x * dawson(x))).abs() < 1e-7, "x={x}");
    }
}

proptest! {
    #[test]
    fn representations_agree(z in -1.0f64..1.0, lam in 0.2f64..5.0) {
        let q = Theta::new(lam).unwrap().with_repr(ThetaRepr::QSeries);
        let g = Theta::new(lam).unwrap().with_repr(ThetaRepr::GaussianSum);
        prop_assert!((q.theta1(z) - g.theta1(z)).abs() < 1e-12);
        prop_assert!((q.theta2(z) - g.theta2(z)).abs() < 1e-12);
        prop_assert!((q.theta3(z) - g.theta3(z)).abs() < 1e-12);
    }

    #[test]
    fn theta_periodicity(z in -1.0f64..1.0, lam in 0.2f64..5.0) {
        let th = Theta::new(lam).unwrap();
        prop_assert!((th.theta1(z + 1.0) + th.theta1(z)).abs() < 1e-12);
        prop_assert!((th.theta3(z + 1.0) - th.theta3(z)).abs() < 1e-12);
    }

    #[test]
    fn dawson_is_bounded(x in -20.0f64..20.0) {
        prop_assert!(dawson(x).abs() <= 0.541);
    }
}

#[test]
fn series_stop_when_every_term_underflows() {
    // θ₁(0, iλ) ≈ 2e^{-πλ/4}, which underflows for λ above ~900
    for lam in [40.0, 4000.0, 1e6] {
        let expected = 2.0 * (-PI * lam / 4.0).exp();
        for _ in 0..10_000 {
            assert!((theta1(0.0, lam).unwrap() - expected).abs() <= 1e-15 * expected);
        }
    }
    // the Gaussian-sum side with a centre term that underflows
    let t = Theta::new(1e-4).unwrap();
    for _ in 0..10_000 {
        assert_eq!(t.theta1(0.5), 0.0);
    }
}
