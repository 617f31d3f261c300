use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{require_positive, Result};
use crate::quadrature::Adaptive;

/// `e^{-πλx²}`.
pub fn gaussian(lam: f64, x: f64) -> f64 {
    (-PI * lam * x * x).exp()
}

/// `d/dx e^{-πλx²} = -2πλx e^{-πλx²}`.
pub fn gaussian_prime(lam: f64, x: f64) -> f64 {
    -2.0 * PI * lam * x * gaussian(lam, x)
}

/// `e^{-πλx²}` for `x > 0`, `1/2` at the origin and `0` for `x < 0`.
pub fn truncated_gaussian(lam: f64, x: f64) -> f64 {
    if x > 0.0 {
        gaussian(lam, x)
    } else if x == 0.0 {
        0.5
    } else {
        0.0
    }
}

/// `sgn(x) e^{-πλx²}`, zero at the origin.
pub fn odd_gaussian(lam: f64, x: f64) -> f64 {
    if x > 0.0 {
        gaussian(lam, x)
    } else if x < 0.0 {
        -gaussian(lam, x)
    } else {
        0.0
    }
}

/// Fourier transform `∫ e^{-2πitx} G⁺_λ(x) dx` of the truncated Gaussian:
///
/// ```text
/// ½ λ^{-1/2} e^{-πt²/λ} − i (t/λ) ∫_0^1 e^{-πt²(1-y²)/λ} dy
/// ```
pub fn ft_truncated_gaussian(lam: f64, t: f64) -> Complex64 {
    let re = 0.5 * gaussian(1.0 / lam, t) / lam.sqrt();
    if t == 0.0 {
        return Complex64::new(re, 0.0);
    }
    let inner = peaked_unit_integral(PI * t * t / lam).unwrap_or_else(|e| match e {
        crate::Error::NoConvergence { value, .. } => value,
        _ => f64::NAN,
    });
    Complex64::new(re, -t / lam * inner)
}

/// `∫_0^1 e^{-a(1-y²)} dy` for `a ≥ 0`.
///
/// With `v = 1 - y` the exponent is `a·v(2-v) ≥ a·v`, so for large `a` the
/// mass sits in `v ≤ 45/a`; the range is clipped there so the adaptive rule
/// cannot miss the peak.
pub(crate) fn peaked_unit_integral(a: f64) -> Result<f64> {
    let upper = (45.0 / a).min(1.0);
    Adaptive::new(1e-300)
        .rel_tol(1e-13)
        .integrate_over(|v| (-a * v * (2.0 - v)).exp(), &[0.0, upper])
        .map(|r| r.value)
}

/// Fourier transform of the full Gaussian, `λ^{-1/2} e^{-πt²/λ}`.
pub fn ft_gaussian(lam: f64, t: f64) -> f64 {
    gaussian(1.0 / lam, t) / lam.sqrt()
}

/// Number of integers on either side of `x` beyond which `e^{-πλ(x-n)²}`
/// is below `1e-18`.
fn gaussian_reach(lam: f64) -> i64 {
    ((18.0 * std::f64::consts::LN_10) / (PI * lam)).sqrt().ceil() as i64 + 1
}

/// Range of `n ≥ 1` that contributes to the truncated sums at `x`.
fn positive_window(x: f64, lam: f64) -> std::ops::RangeInclusive<i64> {
    let reach = gaussian_reach(lam);
    let lo = ((x.floor() as i64).saturating_sub(reach)).max(1);
    let hi = (x.ceil() as i64).saturating_add(reach).max(0);
    lo..=hi
}

/// `θ⁺(x, λ) = Σ_{n≥1} (-1)^{n+1} e^{-πλ(x-n)²}`.
pub fn theta_plus(x: f64, lam: f64) -> f64 {
    positive_window(x, lam)
        .map(|n| sign_plus(n) * gaussian(lam, x - n as f64))
        .sum()
}

/// `ϑ⁺(x, λ) = Σ_{n≥1} G′_λ(x - n) = 2πλ Σ_{n≥1} (n - x) e^{-πλ(n-x)²}`.
pub fn vartheta_plus(x: f64, lam: f64) -> f64 {
    positive_window(x, lam).map(|n| gaussian_prime(lam, x - n as f64)).sum()
}

/// Partial sum `θ⁺_N(x, λ) = Σ_{n=1}^{N} (-1)^{n+1} e^{-πλ(x-n)²}`.
pub fn theta_plus_partial(x: f64, lam: f64, terms: usize) -> f64 {
    (1..=terms as i64)
        .map(|n| sign_plus(n) * gaussian(lam, x - n as f64))
        .sum()
}

/// Partial sum `ϑ⁺_N(x, λ) = Σ_{n=1}^{N} G′_λ(x - n)`.
pub fn vartheta_plus_partial(x: f64, lam: f64, terms: usize) -> f64 {
    (1..=terms as i64).map(|n| gaussian_prime(lam, x - n as f64)).sum()
}

fn sign_plus(n: i64) -> f64 {
    if n % 2 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// The Gaussian `G_λ` together with its derived functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianFamily {
    lam: f64,
}

impl GaussianFamily {
    pub fn new(lam: f64) -> Result<Self> {
        Ok(GaussianFamily {
            lam: require_positive("lam", lam)?,
        })
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    pub fn gaussian(&self, x: f64) -> f64 {
        gaussian(self.lam, x)
    }

    pub fn derivative(&self, x: f64) -> f64 {
        gaussian_prime(self.lam, x)
    }

    pub fn truncated(&self, x: f64) -> f64 {
        truncated_gaussian(self.lam, x)
    }

    pub fn odd(&self, x: f64) -> f64 {
        odd_gaussian(self.lam, x)
    }

    pub fn theta_plus(&self, x: f64) -> f64 {
        theta_plus(x, self.lam)
    }

    pub fn vartheta_plus(&self, x: f64) -> f64 {
        vartheta_plus(x, self.lam)
    }

    pub fn ft(&self, t: f64) -> f64 {
        ft_gaussian(self.lam, t)
    }

    pub fn ft_truncated(&self, t: f64) -> Complex64 {
        ft_truncated_gaussian(self.lam, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::Theta;
    use proptest::prelude::*;

    #[test]
    fn elementary_values() {
        assert_eq!(gaussian(1.0, 0.0), 1.0);
        assert_eq!(gaussian_prime(2.0, 0.0), 0.0);
        assert!((gaussian_prime(1.0, 1.0) + 2.0 * PI * (-PI).exp()).abs() < 1e-16);
        assert_eq!(truncated_gaussian(3.0, 0.0), 0.5);
        assert_eq!(odd_gaussian(3.0, 0.0), 0.0);
        for x in [0.4, -0.4] {
            let d = truncated_gaussian(1.0, x) - truncated_gaussian(1.0, -x);
            assert_eq!(odd_gaussian(1.0, x), d);
        }
    }

    #[test]
    fn theta_plus_at_zero() {
        let oracle: f64 = (1..=5)
            .map(|n: i32| if n % 2 == 1 { 1.0 } else { -1.0 } * (-PI * (n * n) as f64).exp())
            .sum();
        assert!((theta_plus(0.0, 1.0) - oracle).abs() < 1e-16);
        assert!((oracle - 0.043_210_4).abs() < 1e-7);
        assert!(theta_plus(-40.0, 1.0).abs() < 1e-300);
    }

    #[test]
    fn vartheta_plus_at_zero() {
        let oracle: f64 = 2.0 * PI * (1..=6).map(|n| n as f64 * (-PI * (n * n) as f64).exp()).sum::<f64>();
        assert!((vartheta_plus(0.0, 1.0) - oracle).abs() < 1e-15);
        assert!(oracle > 0.0);
    }

    #[test]
    fn far_from_origin_uses_shifted_window() {
        // deep inside the positive axis the alternating sum is ±θ-like and bounded
        let lam = 0.01;
        let x = 1234.5;
        let brute: f64 = (1..=3000).map(|n| sign_plus(n) * gaussian(lam, x - n as f64)).sum();
        assert!((theta_plus(x, lam) - brute).abs() < 1e-12);
    }

    #[test]
    fn ft_values() {
        let ft0 = ft_truncated_gaussian(4.0, 0.0);
        assert_eq!(ft0.im, 0.0);
        assert!((ft0.re - 0.25).abs() < 1e-16);
        let v = ft_truncated_gaussian(1.0, 0.5);
        assert!(v.norm() <= 0.5 + 0.5);
        // inner integral equals D(√a)/√a
        for &(lam, t) in &[(1.0, 0.5), (0.3, 2.0), (2.0, 7.0)] {
            let a = PI * t * t / lam;
            let closed = -t / lam * crate::special::dawson(a.sqrt()) / a.sqrt();
            let v = ft_truncated_gaussian(lam, t);
            assert!((v.im - closed).abs() < 1e-12 * (1.0 + closed.abs()));
        }
    }

    proptest! {
        #[test]
        fn theta_plus_recombines_to_theta1(x in -3.0f64..3.0, lam in 0.3f64..3.0) {
            let lhs = -Theta::new(1.0 / lam).unwrap().theta1(x) / lam.sqrt();
            let rhs = theta_plus(x, lam) + theta_plus(-x, lam) - gaussian(lam, x);
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn vartheta_plus_recombines_to_theta3_prime(x in -3.0f64..3.0, lam in 0.3f64..3.0) {
            let lhs = Theta::new(1.0 / lam).unwrap().theta3_dz(x) / lam.sqrt();
            let rhs = vartheta_plus(x, lam) - vartheta_plus(-x, lam) + gaussian_prime(lam, x);
            prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()));
        }

        #[test]
        fn ft_bound(lam in 0.1f64..10.0, t in -20.0f64..20.0) {
            let v = ft_truncated_gaussian(lam, t);
            prop_assert!(v.norm() <= 0.5 / lam.sqrt() + t.abs() / lam + 1e-15);
        }
    }
}
