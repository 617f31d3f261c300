//! The optimal error `H(λ) = (1/πλ) ∫_0^1 θ₁(0, i(1-y²)/λ) dy` and the
//! related one-frequency integrals `H_t(λ)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{compensated_sum, Adaptive};
use crate::error::{require_positive, Result};
use crate::special::{ft_truncated_gaussian, Theta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HMethod {
    /// The defining integral in `y`; the integrand blows up like
    /// `(1-y)^{-1/2}` at `y = 1`, which limits attainable accuracy.
    Direct,
    /// `y = sin φ`, which makes the integrand bounded.
    Substituted,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HProfile {
    pub lam: f64,
    pub value: f64,
    pub method: HMethod,
}

/// `cos φ · θ₁(0, i cos²φ / λ)`.
///
/// Once the modulus `s = cos²φ/λ` drops below one, the transformed series
/// `cos φ · s^{-1/2} Σ (-1)^n e^{-πn²/s} = √λ Σ (-1)^n e^{-πn²λ/cos²φ}` is
/// used, which stays bounded as `cos φ → 0`.
fn substituted_integrand(lam: f64, phi: f64) -> f64 {
    let c = phi.cos();
    let s = c * c / lam;
    if s >= 1.0 {
        return Theta::new(s).map(|t| c * t.theta1(0.0)).unwrap_or(f64::NAN);
    }
    let mut sum = 1.0;
    for n in 1..64 {
        let t = (-PI * (n * n) as f64 * lam / (c * c)).exp();
        sum += if n % 2 == 0 { 2.0 * t } else { -2.0 * t };
        if t < 1e-17 {
            break;
        }
    }
    lam.sqrt() * sum
}

/// `H(λ)`, the minimal L¹ distance between the truncated Gaussian and entire
/// functions of exponential type π.
pub fn h_lambda(lam: f64) -> Result<f64> {
    Ok(h_lambda_with(lam, HMethod::Substituted, 1e-10)?.value)
}

/// `H(λ)` by the chosen method to absolute tolerance `tol` (relative to the
/// size of the value for large `λ`).
pub fn h_lambda_with(lam: f64, method: HMethod, tol: f64) -> Result<HProfile> {
    let lam = require_positive("lam", lam)?;
    require_positive("tol", tol)?;
    let scale = PI * lam;
    // H(λ) ~ 1/(2√λ) for large λ, so ask for relative accuracy too
    let engine = Adaptive::new(tol * scale * 1e-3).rel_tol(tol).max_panels(10_000);
    let integral = match method {
        HMethod::Substituted => {
            let h = 0.5 * PI;
            let pts = [0.0, h - 0.5, h - 0.05, h - 0.005, h - 5e-4, h];
            engine.integrate_over(|phi| substituted_integrand(lam, phi), &pts)?
        }
        HMethod::Direct => {
            let pts = [0.0, 0.5, 0.9, 0.99, 0.999, 1.0];
            engine.integrate_over(
                |y| {
                    let s = (1.0 - y) * (1.0 + y) / lam;
                    if s > 0.0 {
                        Theta::new(s).map(|t| t.theta1(0.0)).unwrap_or(f64::NAN)
                    } else {
                        0.0
                    }
                },
                &pts,
            )?
        }
    };
    Ok(HProfile {
        lam,
        value: integral.value / scale,
        method,
    })
}

/// `H(λ)` on each of `lams`, in order.
pub fn h_profile(lams: &[f64]) -> Result<Vec<HProfile>> {
    use rayon::prelude::*;
    lams.par_iter()
        .map(|&lam| h_lambda_with(lam, HMethod::Substituted, 1e-10))
        .collect()
}

/// `H_t(λ) = (1/πλ) ∫_0^1 e^{-πt²(1-y²)/λ} dy`.
pub fn h_t(t: f64, lam: f64) -> Result<f64> {
    let lam = require_positive("lam", lam)?;
    let a = PI * t * t / lam;
    Ok(crate::special::peaked_unit_integral(a)? / (PI * lam))
}

/// Result of the truncated Fourier-sum representation of `H(λ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FourierSum {
    /// `(i/π) Σ_{|n| ≤ N} Ĝ⁺_λ(n+½)/(n+½)` as computed.
    pub partial_re: f64,
    pub partial_im: f64,
    /// Asymptotic estimate of the omitted terms `|n| > N`.
    pub tail: f64,
    /// `partial_re + tail`.
    pub value: f64,
}

/// `(i/π) Σ_n Ĝ⁺_λ(n+½)/(n+½)` with `|n| ≤ max_n` summed explicitly.
///
/// Paired terms `±(n+½)` add up to `2H_{n+½}(λ)`, and for large `t`
/// `H_t(λ) = 1/(2π²t²) + λ/(4π³t⁴) + 3λ²/(8π⁴t⁶) + 15λ³/(16π⁵t⁸) + …`
/// (from the asymptotic series of Dawson's integral). The omitted terms are
/// summed from this expansion with Hurwitz zeta values. The expansion needs
/// `π(max_n)²/λ` to be large, which holds comfortably for the usual
/// `max_n = 100..200` unless `λ` is in the thousands.
pub fn fourier_sum(lam: f64, max_n: usize) -> Result<FourierSum> {
    let lam = require_positive("lam", lam)?;
    let n = max_n as i64;
    let terms: Vec<Complex64> = (-n..=n)
        .map(|k| {
            let t = k as f64 + 0.5;
            Complex64::new(0.0, 1.0 / PI) * ft_truncated_gaussian(lam, t) / t
        })
        .collect();
    let partial_re = compensated_sum(terms.iter().map(|c| c.re));
    let partial_im = compensated_sum(terms.iter().map(|c| c.im));
    // omitted t = m + ½ for m ≥ N+1 (positive side) and m ≥ N (negative side)
    let coeffs = [
        (2, 1.0 / (2.0 * PI * PI)),
        (4, lam / (4.0 * PI.powi(3))),
        (6, 3.0 * lam * lam / (8.0 * PI.powi(4))),
        (8, 15.0 * lam.powi(3) / (16.0 * PI.powi(5))),
    ];
    let q_pos = max_n as f64 + 1.5;
    let q_neg = max_n as f64 + 0.5;
    let tail = coeffs
        .iter()
        .map(|&(s, c)| c * (hurwitz_zeta(s, q_pos) + hurwitz_zeta(s, q_neg)))
        .sum::<f64>();
    Ok(FourierSum {
        partial_re,
        partial_im,
        tail,
        value: partial_re + tail,
    })
}

/// `ζ(s, q) = Σ_{k≥0} (k+q)^{-s}` for integer `s ≥ 2`, `q > 0`, by
/// Euler–Maclaurin summation after ten explicit terms.
pub(crate) fn hurwitz_zeta(s: i32, q: f64) -> f64 {
    const B2K: [f64; 6] = [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
    ];
    let explicit = 10;
    let mut sum: f64 = (0..explicit).map(|k| (k as f64 + q).powi(-s)).sum();
    let a = q + explicit as f64;
    let sf = s as f64;
    sum += a.powf(1.0 - sf) / (sf - 1.0) + 0.5 * a.powi(-s);
    // B_{2k}/(2k)! · s(s+1)…(s+2k-2) · a^{-s-2k+1}
    let mut rising = sf;
    let mut fact = 2.0;
    for (k, b) in B2K.iter().enumerate() {
        let k = k as i32 + 1;
        sum += b / fact * rising * a.powi(-s - 2 * k + 1);
        rising *= (sf + 2.0 * k as f64 - 1.0) * (sf + 2.0 * k as f64);
        fact *= ((2 * k + 1) * (2 * k + 2)) as f64;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hurwitz_matches_riemann_zeta() {
        assert!((hurwitz_zeta(2, 1.0) - PI * PI / 6.0).abs() < 1e-14);
        assert!((hurwitz_zeta(4, 1.0) - PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(2, 1/2) = 3ζ(2) = π²/2
        assert!((hurwitz_zeta(2, 0.5) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn h_at_one() {
        let h = h_lambda(1.0).unwrap();
        assert!((h - 0.487_811_652_979_80).abs() < 1e-11, "{h}");
    }

    #[test]
    fn methods_agree() {
        for lam in [0.5, 1.0, 2.0] {
            let a = h_lambda_with(lam, HMethod::Substituted, 1e-11).unwrap().value;
            let b = h_lambda_with(lam, HMethod::Direct, 1e-7).unwrap().value;
            assert!((a - b).abs() < 1e-6, "lam={lam} {a} {b}");
        }
    }

    #[test]
    fn asymptotic_limits() {
        assert!((h_lambda(1e-4).unwrap() - 0.5).abs() < 0.005);
        assert!((1e2 * h_lambda(1e4).unwrap() - 0.5).abs() < 0.005);
    }

    #[test]
    fn fourier_sum_matches_integral() {
        let fs = fourier_sum(1.0, 100).unwrap();
        assert!(fs.partial_im.abs() < 1e-10);
        assert!((fs.value - h_lambda(1.0).unwrap()).abs() < 1e-8, "{fs:?}");
    }

    #[test]
    fn h_t_bounds() {
        for t in [0.5, 1.5, 4.0] {
            for lam in [0.1, 1.0, 3.0] {
                let v = h_t(t, lam).unwrap();
                let upper = 1.0 / (PI * PI * t * t);
                let lower = upper / 2.0 * (1.0 - (-2.0 * PI * t * t / lam).exp());
                assert!(v <= upper && v >= lower, "t={t} lam={lam} {v}");
            }
        }
    }
}
