use std::f64::consts::PI;

use super::{fmt_lams, CheckConfig, Measured, Violations};
use crate::error::Result;
use crate::extremal::{Approximant, Kind, Parity};
use crate::quadrature::{fourier_sum, h_lambda, h_t, integrate_2d, Adaptive, Axis, Region2d};
use crate::special::{ft_truncated_gaussian, gaussian, Theta};

/// `2πλ^{3/2} ∫_outer ∫_inner e^{-2πλtu} G_λ(z−t) G_λ(w−u) du dt`.
fn quadrant(lam: f64, z: f64, w: f64, outer: Axis, inner: Axis) -> Result<f64> {
    // along t = −u the integrand decays like e^{-2πλ|z−w||t|}
    let half_width = 6.0 + 40.0 / (2.0 * PI * lam * (z - w).abs());
    let region = Region2d {
        outer,
        inner,
        half_width,
        panel_width: 1.0,
    };
    let f = |t: f64, u: f64| (-PI * lam * ((z - t).powi(2) + (w - u).powi(2) + 2.0 * t * u)).exp();
    Ok(2.0 * PI * lam.powf(1.5) * integrate_2d(f, &region, 1e-10)?.value)
}

pub(super) fn integral_representations(config: &CheckConfig) -> Result<Measured> {
    use Axis::{Negative as N, Positive as P, Whole as W};
    let lams = config.lams(&[1.0]);
    let below = [(-1.3, 0.7), (-0.4, 0.5)];
    let above = [(1.2, 0.3), (0.6, -0.5)];
    let mut v = Violations::new();
    for &lam in &lams {
        let g = |x: f64| gaussian(lam, x);
        for &(z, w) in below.iter().chain(&above) {
            let lhs = (g(z) - g(w)) / (z - w);
            let rhs = quadrant(lam, z, w, N, N)? - quadrant(lam, z, w, P, P)?;
            v.record((lhs - rhs).abs(), || format!("difference quotient λ={lam} z={z} w={w}"));
        }
        for &(z, w) in &below {
            let rhs = -quadrant(lam, z, w, W, N)?;
            v.record((g(w) / (z - w) - rhs).abs(), || {
                format!("G(w)/(z−w), z<w λ={lam} z={z} w={w}")
            });
            let rhs = -quadrant(lam, z, w, P, N)? - quadrant(lam, z, w, P, P)?;
            v.record((g(z) / (z - w) - rhs).abs(), || {
                format!("G(z)/(z−w), z<w λ={lam} z={z} w={w}")
            });
        }
        for &(z, w) in &above {
            let rhs = quadrant(lam, z, w, W, P)?;
            v.record((g(w) / (z - w) - rhs).abs(), || {
                format!("G(w)/(z−w), z>w λ={lam} z={z} w={w}")
            });
            let rhs = quadrant(lam, z, w, N, N)? + quadrant(lam, z, w, N, P)?;
            v.record((g(z) / (z - w) - rhs).abs(), || {
                format!("G(z)/(z−w), z>w λ={lam} z={z} w={w}")
            });
        }
        // G_λ(z)^{-1} = λ^{1/2} ∫ e^{-2πλzu} G_λ(u) du
        for &z in &[0.8, -0.3] {
            let points: Vec<f64> = (-12..=12).map(|k| -z + 0.5 * k as f64).collect();
            let rhs = lam.sqrt()
                * Adaptive::new(1e-13)
                    .integrate_over(|u| (-PI * lam * (u * u + 2.0 * z * u)).exp(), &points)?
                    .value;
            v.record((1.0 / g(z) - rhs).abs(), || format!("1/G(z) λ={lam} z={z}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "(z, w) ∈ {{(−1.3, 0.7), (−0.4, 0.5)}} for z < w and {{(1.2, 0.3), (0.6, −0.5)}} for z > w, \
             iterated quadrature to 1e-10; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn ft_truncated(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.5, 1.0, 2.0]);
    let mut v = Violations::new();
    for &lam in &lams {
        let upper = (40.0 / (PI * lam)).sqrt().max(8.0);
        let points: Vec<f64> = (0..=(4.0 * upper).ceil() as usize).map(|k| 0.25 * k as f64).collect();
        for &t in &[0.0, 0.5, 1.5] {
            let engine = Adaptive::new(1e-14);
            let re = engine
                .integrate_over(|x| gaussian(lam, x) * (2.0 * PI * t * x).cos(), &points)?
                .value;
            let im = -engine
                .integrate_over(|x| gaussian(lam, x) * (2.0 * PI * t * x).sin(), &points)?
                .value;
            let closed = ft_truncated_gaussian(lam, t);
            let d = ((closed.re - re).powi(2) + (closed.im - im).powi(2)).sqrt();
            v.record(d, || format!("λ={lam} t={t}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "t ∈ {{0, 0.5, 1.5}}, direct quadrature on (0, ≥8]; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn fourier_sum_identity(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.5, 1.0, 2.0]);
    let mut v = Violations::new();
    for &lam in &lams {
        let s = fourier_sum(lam, 100)?;
        let h = h_lambda(lam)?;
        v.record((s.value - h).abs(), || {
            format!("λ={lam} sum={} tail={:e} H={h}", s.value, s.tail)
        });
    }
    Ok(Measured {
        violations: v,
        grid: format!("201 explicit terms plus the asymptotic tail; λ ∈ {}", fmt_lams(&lams)),
    })
}

pub(super) fn poisson_value(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.5, 1.0, 2.0]);
    let mut v = Violations::new();
    for &lam in &lams {
        let t3 = Theta::new(lam)?.theta3(0.0);
        for (kind, expected) in [(Kind::Minorant, 0.5 * t3 - 0.5), (Kind::Majorant, 0.5 * t3 + 0.5)] {
            let a = Approximant::new(kind, Parity::Truncated, lam)?;
            let sum: f64 = (-40..=40).map(|n| a.eval(n as f64)).sum();
            v.record((sum - expected).abs(), || format!("{} λ={lam}", kind.name()));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("n ∈ {{−40..40}}; λ ∈ {}", fmt_lams(&lams)),
    })
}

pub(super) fn h_asymptotics(_config: &CheckConfig) -> Result<Measured> {
    const WINDOW: f64 = 0.005;
    const BRACKET_SLACK: f64 = 1e-10;
    let mut v = Violations::new();
    let small = h_lambda(1e-4)?;
    v.bound((small - 0.5).abs(), WINDOW, || format!("H(1e-4)={small}"));
    let large = 1e2 * h_lambda(1e4)?;
    v.bound((large - 0.5).abs(), WINDOW, || format!("√λH(λ) at 1e4 = {large}"));
    // (1/π)∫₀^{π/2}(1 − 2e^{-πλ/cos²φ})dφ ≤ √λH(λ) ≤ 1/2
    let lam: f64 = 10.0;
    let scaled = lam.sqrt() * h_lambda(lam)?;
    let lower = Adaptive::new(1e-14)
        .integrate_over(
            |phi: f64| {
                let c = phi.cos();
                if c == 0.0 {
                    1.0
                } else {
                    1.0 - 2.0 * (-PI * lam / (c * c)).exp()
                }
            },
            &[0.0, 0.5 * PI],
        )?
        .value
        / PI;
    v.bound(lower - scaled, BRACKET_SLACK, || {
        format!("lower bracket {lower} vs {scaled}")
    });
    v.bound(scaled - 0.5, BRACKET_SLACK, || format!("upper bracket 0.5 vs {scaled}"));
    Ok(Measured {
        violations: v,
        grid: format!(
            "λ ∈ {{1e-4, 1e4}} with window ±{WINDOW}, bracket at λ=10 with slack {BRACKET_SLACK:e} (normalized)"
        ),
    })
}

pub(super) fn h_t_bounds(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.1, 1.0]);
    let mut v = Violations::new();
    for &lam in &lams {
        for &t in &[0.5, 1.5] {
            let value = h_t(t, lam)?;
            let upper = 1.0 / (PI * PI * t * t);
            let lower = (1.0 - (-2.0 * PI * t * t / lam).exp()) / (2.0 * PI * PI * t * t);
            v.record(value - upper, || format!("upper λ={lam} t={t}"));
            v.record(lower - value, || format!("lower λ={lam} t={t}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("t ∈ {{0.5, 1.5}}; λ ∈ {}", fmt_lams(&lams)),
    })
}
