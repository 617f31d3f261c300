//! Theta functions at purely imaginary modulus `τ = iλ`, `q = e^{-πλ}`.
//!
//! Labeling (note that `θ₂` here is what most references call `θ₄`):
//!
//! ```text
//! θ₁(z, iλ) = Σ_{n∈ℤ} q^{(n+1/2)²} e^{(2n+1)πiz}
//! θ₂(z, iλ) = Σ_{n∈ℤ} (-1)^n q^{n²} e^{2πinz}
//! θ₃(z, iλ) = Σ_{n∈ℤ} q^{n²} e^{2πinz}
//! ```
//!
//! Two representations are available. The q-series converge fast when `λ`
//! is large; for small `λ` the Jacobi transformation turns each function
//! into a sum of Gaussians of width `√λ`:
//!
//! ```text
//! θ₁(z, iλ) = λ^{-1/2} Σ (-1)^n e^{-π(z-n)²/λ}
//! θ₂(z, iλ) = λ^{-1/2} Σ e^{-π(z-n-1/2)²/λ}
//! θ₃(z, iλ) = λ^{-1/2} Σ e^{-π(z-n)²/λ}
//! ```

use std::f64::consts::PI;

use super::trig::{cos_pi, sin_pi};
use crate::error::{require_positive, Error, Result};

/// Relative size of the first neglected term.
const SERIES_EPS: f64 = 1e-17;
const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRepr {
    /// Fourier series in `z` with nome `q = e^{-πλ}`.
    QSeries,
    /// Modular-transformed sum of Gaussians.
    GaussianSum,
}

/// Theta functions with fixed modulus `iλ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theta {
    lam: f64,
    repr: ThetaRepr,
}

impl Theta {
    /// Picks the q-series for `λ ≥ 1` and the Gaussian sums below.
    pub fn new(lam: f64) -> Result<Self> {
        let lam = require_positive("lam", lam)?;
        let repr = if lam >= 1.0 {
            ThetaRepr::QSeries
        } else {
            ThetaRepr::GaussianSum
        };
        Ok(Theta { lam, repr })
    }

    /// Forces a representation; both are valid for every `λ > 0`.
    pub fn with_repr(self, repr: ThetaRepr) -> Self {
        Theta { repr, ..self }
    }

    pub fn lam(&self) -> f64 {
        self.lam
    }

    pub fn repr(&self) -> ThetaRepr {
        self.repr
    }

    pub fn theta1(&self, z: f64) -> f64 {
        match self.repr {
            ThetaRepr::QSeries => {
                let lam = self.lam;
                q_sum(
                    |n| {
                        let m = n as f64 + 0.5;
                        let w = (-PI * lam * m * m).exp();
                        (2.0 * w * cos_pi((2 * n + 1) as f64 * z), w)
                    },
                    0,
                )
            }
            ThetaRepr::GaussianSum => {
                // θ₁(z + 1) = -θ₁(z)
                let k = z.round();
                let r = z - k;
                let sign = if (k as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                let lam = self.lam;
                sign * gauss_sum(r, lam, |n, g| if n % 2 == 0 { g } else { -g }) / lam.sqrt()
            }
        }
    }

    pub fn theta2(&self, z: f64) -> f64 {
        match self.repr {
            ThetaRepr::QSeries => {
                let lam = self.lam;
                1.0 + q_sum(
                    |n| {
                        let m = n as f64;
                        let w = (-PI * lam * m * m).exp();
                        let s = if n % 2 == 0 { 2.0 } else { -2.0 };
                        (s * w * cos_pi(2.0 * m * z), w)
                    },
                    1,
                )
            }
            ThetaRepr::GaussianSum => {
                let r = z - z.round();
                gauss_sum(r - 0.5, self.lam, |_, g| g) / self.lam.sqrt()
            }
        }
    }

    pub fn theta3(&self, z: f64) -> f64 {
        match self.repr {
            ThetaRepr::QSeries => {
                let lam = self.lam;
                1.0 + q_sum(
                    |n| {
                        let m = n as f64;
                        let w = (-PI * lam * m * m).exp();
                        (2.0 * w * cos_pi(2.0 * m * z), w)
                    },
                    1,
                )
            }
            ThetaRepr::GaussianSum => {
                let r = z - z.round();
                gauss_sum(r, self.lam, |_, g| g) / self.lam.sqrt()
            }
        }
    }

    /// `∂θ₃/∂z`.
    pub fn theta3_dz(&self, z: f64) -> f64 {
        let lam = self.lam;
        match self.repr {
            ThetaRepr::QSeries => q_sum(
                |n| {
                    let m = n as f64;
                    let w = (-PI * lam * m * m).exp();
                    (-4.0 * PI * m * w * sin_pi(2.0 * m * z), m * w)
                },
                1,
            ),
            ThetaRepr::GaussianSum => {
                let r = z - z.round();
                let mut sum = 0.0;
                for_gauss_terms(r, lam, |n, g| {
                    let d = r - n as f64;
                    sum += -2.0 * PI * d / lam * g;
                });
                sum / lam.sqrt()
            }
        }
    }

    /// `θ₂(ix, iλ)`, which is real for real `x`.
    pub fn theta2_imag(&self, x: f64) -> f64 {
        let lam = self.lam;
        match self.repr {
            ThetaRepr::QSeries => {
                // 1 + 2 Σ (-1)^n e^{-πλn²} cosh(2πnx); each term is evaluated in
                // one exponent to avoid overflow of cosh for large n|x|.
                let ax = x.abs();
                let mut sum = 0.0;
                for n in 1..MAX_TERMS {
                    let m = n as f64;
                    let e = -PI * lam * m * m + 2.0 * PI * m * ax;
                    let t =
                        (e.exp() + (-PI * lam * m * m - 2.0 * PI * m * ax).exp()) * if n % 2 == 0 { 1.0 } else { -1.0 };
                    sum += t;
                    if m * lam > ax && t.abs() < SERIES_EPS * (1.0 + sum.abs()) {
                        break;
                    }
                }
                1.0 + sum
            }
            ThetaRepr::GaussianSum => {
                // λ^{-1/2} e^{πx²/λ} Σ_{m ∈ ℤ+1/2} e^{-πm²/λ} cos(2πmx/λ)
                let mut sum = 0.0;
                for k in 0..MAX_TERMS {
                    let m = k as f64 + 0.5;
                    let w = (-PI * m * m / lam).exp();
                    sum += 2.0 * w * (2.0 * PI * m * x / lam).cos();
                    if w < SERIES_EPS * sum.abs().max(f64::MIN_POSITIVE) {
                        break;
                    }
                }
                (PI * x * x / lam).exp() * sum / lam.sqrt()
            }
        }
    }

    /// `i·θ₂′(ix, iλ)`, i.e. the derivative of the real function
    /// `x ↦ θ₂(ix, iλ)`, from the logarithmic-derivative series
    ///
    /// ```text
    /// iθ₂′(ix, iλ) = -2π θ₂(ix, iλ) Σ_{n≥1} sinh(2πnx) / sinh(πnλ),   |x| < λ/2.
    /// ```
    pub fn theta2_dz_imag(&self, x: f64) -> Result<f64> {
        let lam = self.lam;
        if x.is_nan() || x.abs() >= 0.5 * lam {
            return Err(Error::Domain {
                name: "x",
                value: x,
                reason: "outside the convergence strip |x| < lam/2",
            });
        }
        if x == 0.0 {
            return Ok(0.0);
        }
        let ax = x.abs();
        let mut sum = 0.0;
        for n in 1..MAX_TERMS {
            let a = 2.0 * PI * n as f64 * ax;
            let b = PI * n as f64 * lam;
            let ratio = (a - b).exp() * (-(-2.0 * a).exp_m1()) / (-(-2.0 * b).exp_m1());
            sum += ratio;
            if ratio < 1e-16 * sum {
                break;
            }
        }
        Ok(-2.0 * PI * self.theta2_imag(x) * sum.copysign(x))
    }
}

/// Sums `Σ_{n ≥ start}` of terms given as `(value, magnitude)`, stopping once
/// the magnitude falls below `SERIES_EPS` relative to the partial sum.
fn q_sum<F: Fn(i64) -> (f64, f64)>(term: F, start: i64) -> f64 {
    let mut sum = 0.0;
    let mut scale: f64 = if start == 1 { 1.0 } else { 0.0 };
    for n in start..start + MAX_TERMS as i64 {
        let (t, w) = term(n);
        sum += t;
        scale = scale.max(w);
        if w <= SERIES_EPS * scale {
            break;
        }
    }
    sum
}

/// Visits `(n, e^{-π(r-n)²/λ})` for all `n` whose term is not negligible,
/// in order of increasing `|r - n|` from both sides.
fn for_gauss_terms<F: FnMut(i64, f64)>(r: f64, lam: f64, mut visit: F) {
    let center = r.round() as i64;
    let g0 = (-PI * (r - center as f64).powi(2) / lam).exp();
    visit(center, g0);
    for k in 1..MAX_TERMS as i64 {
        let lo = center - k;
        let hi = center + k;
        let gl = (-PI * (r - lo as f64).powi(2) / lam).exp();
        let gh = (-PI * (r - hi as f64).powi(2) / lam).exp();
        visit(lo, gl);
        visit(hi, gh);
        if gl.max(gh) <= SERIES_EPS * g0 {
            break;
        }
    }
}

fn gauss_sum<F: Fn(i64, f64) -> f64>(r: f64, lam: f64, weight: F) -> f64 {
    let mut sum = 0.0;
    for_gauss_terms(r, lam, |n, g| sum += weight(n.rem_euclid(2), g));
    sum
}

pub fn theta1(z: f64, lam: f64) -> Result<f64> {
    Ok(Theta::new(lam)?.theta1(z))
}

pub fn theta2(z: f64, lam: f64) -> Result<f64> {
    Ok(Theta::new(lam)?.theta2(z))
}

pub fn theta3(z: f64, lam: f64) -> Result<f64> {
    Ok(Theta::new(lam)?.theta3(z))
}

pub fn theta3_dz(z: f64, lam: f64) -> Result<f64> {
    Ok(Theta::new(lam)?.theta3_dz(z))
}

pub fn theta2_imag(x: f64, lam: f64) -> Result<f64> {
    Ok(Theta::new(lam)?.theta2_imag(x))
}

pub fn theta2_dz_imag(x: f64, lam: f64) -> Result<f64> {
    Theta::new(lam)?.theta2_dz_imag(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct(lam: f64, f: impl Fn(f64) -> f64) -> f64 {
        (-10..=10)
            .map(|n| f(n as f64) * (-PI * lam * (n * n) as f64).exp())
            .sum()
    }

    #[test]
    fn theta3_at_one() {
        let oracle = direct(1.0, |_| 1.0);
        assert!((theta3(0.0, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 1.086_434_811_213_308).abs() < 1e-15);
    }

    #[test]
    fn theta2_at_zero() {
        let oracle = direct(1.0, |n| if n as i64 % 2 == 0 { 1.0 } else { -1.0 });
        assert!((theta2(0.0, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!((theta2(0.0, 60.0).unwrap() - 1.0).abs() < 1e-15);
        // λ ↦ θ₂(0, i/λ) decreases
        assert!(theta2(0.0, 1.0 / 2.0).unwrap() <= theta2(0.0, 1.0).unwrap());
    }

    #[test]
    fn theta1_self_dual_point() {
        let oracle: f64 = (-10..=10)
            .map(|n: i64| if n % 2 == 0 { 1.0 } else { -1.0 } * (-PI * (n * n) as f64).exp())
            .sum();
        assert!((theta1(0.0, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!(theta1(0.5, 1.0).unwrap().abs() < 1e-16);
        let t = Theta::new(1.0).unwrap();
        assert!((t.theta1(1.2) + t.theta1(0.2)).abs() < 1e-15);
    }

    #[test]
    fn theta3_small_modulus_limit() {
        let lam: f64 = 1e-4;
        assert!((lam.sqrt() * theta3(0.0, lam).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn derivative_against_finite_difference() {
        let h = 1e-5;
        for &lam in &[2.0, 0.3] {
            let t = Theta::new(lam).unwrap();
            let fd = (t.theta3(0.3 + h) - t.theta3(0.3 - h)) / (2.0 * h);
            assert!((t.theta3_dz(0.3) - fd).abs() < 1e-8);
        }
        assert_eq!(theta3_dz(0.0, 1.0).unwrap(), 0.0);
        assert!(theta3_dz(0.25, 1.0).unwrap() <= 0.0);
    }

    #[test]
    fn imaginary_derivative() {
        let h = 1e-5;
        for &lam in &[1.0, 0.6, 3.0] {
            let t = Theta::new(lam).unwrap();
            let x = -0.2 * lam;
            let fd = (t.theta2_imag(x + h) - t.theta2_imag(x - h)) / (2.0 * h);
            let v = t.theta2_dz_imag(x).unwrap();
            assert!(v > 0.0);
            assert!((v - fd).abs() < 1e-7 * (1.0 + fd.abs()), "lam={lam} {v} {fd}");
        }
        assert_eq!(theta2_dz_imag(0.0, 1.0).unwrap(), 0.0);
        assert!(theta2_dz_imag(0.5, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_modulus() {
        assert!(theta1(0.0, 0.0).is_err());
        assert!(theta3(0.0, -1.0).is_err());
        assert!(theta2(0.0, f64::NAN).is_err());
    }

    proptest! {
        #[test]
        fn representations_agree(z in -3.0f64..3.0, lam in 0.2f64..5.0) {
            let q = Theta::new(lam).unwrap().with_repr(ThetaRepr::QSeries);
            let g = q.with_repr(ThetaRepr::GaussianSum);
            for (a, b) in [
                (q.theta1(z), g.theta1(z)),
                (q.theta2(z), g.theta2(z)),
                (q.theta3(z), g.theta3(z)),
                (q.theta3_dz(z), g.theta3_dz(z)),
            ] {
                prop_assert!((a - b).abs() < 1e-12 * (1.0 + a.abs()), "{} {}", a, b);
            }
        }

        #[test]
        fn imaginary_representations_agree(x in -0.45f64..0.45, lam in 0.3f64..3.0) {
            let q = Theta::new(lam).unwrap().with_repr(ThetaRepr::QSeries);
            let g = q.with_repr(ThetaRepr::GaussianSum);
            let xl = x * lam;
            let (a, b) = (q.theta2_imag(xl), g.theta2_imag(xl));
            prop_assert!((a - b).abs() < 1e-11 * (1.0 + a.abs()), "{} {}", a, b);
        }

        #[test]
        fn periodicity(z in -2.0f64..2.0, lam in 0.1f64..4.0) {
            let t = Theta::new(lam).unwrap();
            prop_assert!((t.theta3(z + 1.0) - t.theta3(z)).abs() < 1e-12 * (1.0 + t.theta3(z).abs()));
            prop_assert!((t.theta1(z + 1.0) + t.theta1(z)).abs() < 1e-12 * (1.0 + t.theta1(z).abs()));
        }
    }
}
