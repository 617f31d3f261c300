use std::f64::consts::PI;

use super::{fmt_lams, linspace, CheckConfig, Measured, Violations, STRICT_MARGIN};
use crate::error::Result;
use crate::quadrature::{compensated_sum, Adaptive};
use crate::special::{
    dawson, gaussian, gaussian_prime, theta_plus, theta_plus_partial, vartheta_plus, vartheta_plus_partial, Theta,
    ThetaRepr,
};

const THETA_LAMS: [f64; 3] = [0.5, 1.0, 2.0];

/// `Σ_{|n| ≤ 60} s(n) e^{-πλ(z - n - shift)²}` with sign pattern `s`.
fn gaussian_sum(lam: f64, z: f64, shift: f64, alternating: bool) -> f64 {
    compensated_sum((-60..=60).map(|n: i64| {
        let s = if alternating && n % 2 != 0 { -1.0 } else { 1.0 };
        s * gaussian(lam, z - n as f64 - shift)
    }))
}

pub(super) fn theta_transformations(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.25, 1.0, 4.0]);
    let zs = [0.0, 0.1, 0.37, 0.5];
    let mut v = Violations::new();
    for &lam in &lams {
        for repr in [ThetaRepr::QSeries, ThetaRepr::GaussianSum] {
            let th = Theta::new(1.0 / lam)?.with_repr(repr);
            let scale = lam.sqrt();
            for &z in &zs {
                let pairs = [
                    ("θ₁", th.theta1(z) / scale, gaussian_sum(lam, z, 0.0, true)),
                    ("θ₂", th.theta2(z) / scale, gaussian_sum(lam, z, 0.5, false)),
                    ("θ₃", th.theta3(z) / scale, gaussian_sum(lam, z, 0.0, false)),
                ];
                for (name, lhs, rhs) in pairs {
                    v.record((lhs - rhs).abs() / (1.0 + rhs.abs()), || {
                        format!("{name} {repr:?} λ={lam} z={z}")
                    });
                }
            }
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "z ∈ {{0, 0.1, 0.37, 0.5}}, both representations, error relative to 1+|value|; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn theta1_theta2_link(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&THETA_LAMS);
    let xs = linspace(0.0, 0.45, config.points(46, 10));
    let mut v = Violations::new();
    for &lam in &lams {
        let inv = Theta::new(1.0 / lam)?;
        let th = Theta::new(lam)?;
        for &x in &xs {
            let lhs = inv.theta1(x) / lam.sqrt();
            let rhs = gaussian(lam, x) * th.theta2_imag(-lam * x);
            v.record((lhs - rhs).abs(), || format!("λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("{} points on [0, 0.45]; λ ∈ {}", xs.len(), fmt_lams(&lams)),
    })
}

pub(super) fn lemma_theta2_signs(config: &CheckConfig) -> Result<Measured> {
    const NONSTRICT_TOL: f64 = 1e-12;
    let lams = config.lams(&THETA_LAMS);
    let n = config.points(50, 10);
    let mut v = Violations::new();
    for &lam in &lams {
        let th = Theta::new(lam)?;
        // interior points of (−λ/2, 0)
        for k in 1..n {
            let x = -0.5 * lam * k as f64 / n as f64;
            let d = th.theta2_dz_imag(x)?;
            v.strict(-d, STRICT_MARGIN, || format!("iθ₂′ λ={lam} x={x}"));
        }
        for x in linspace(0.0, 0.5, n + 1) {
            v.bound(th.theta3_dz(x), NONSTRICT_TOL, || format!("θ₃′ λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "{} interior points of (−λ/2, 0) (strict, margin {STRICT_MARGIN:e}) and {} points on [0, 1/2] (slack {NONSTRICT_TOL:e}); λ ∈ {}",
            n - 1,
            n + 1,
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn theta_ratio_bound(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&THETA_LAMS);
    let n = config.points(50, 10);
    let xs: Vec<f64> = (0..n).map(|k| 0.5 * k as f64 / n as f64).collect();
    let mut v = Violations::new();
    for &lam in &lams {
        let th = Theta::new(1.0 / lam)?;
        let at0 = th.theta1(0.0);
        for &x in &xs {
            v.record(th.theta1(x) / at0 - gaussian(lam, x), || format!("λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("{n} points on [0, 1/2); λ ∈ {}", fmt_lams(&lams)),
    })
}

/// `∫_0^∞ e^{-2πλxt}(θ₁(t, i/λ) − θ₁(0, i/λ)G_λ(t)) dt` with its error estimate.
fn laplace_integral(lam: f64, x: f64) -> Result<(f64, f64)> {
    let th = Theta::new(1.0 / lam)?;
    let at0 = th.theta1(0.0);
    let rate = 2.0 * PI * lam * x;
    // e^{-rate·T} below 1e-18; θ₁ stays bounded by θ₁(0)
    let upper = (18.0 * std::f64::consts::LN_10 / rate).ceil() + 1.0;
    let points: Vec<f64> = (0..=(2.0 * upper) as usize).map(|k| 0.5 * k as f64).collect();
    let r = Adaptive::new(1e-17)
        .rel_tol(1e-11)
        .max_panels(20_000)
        .integrate_over(|t| (-rate * t).exp() * (th.theta1(t) - at0 * gaussian(lam, t)), &points)?;
    Ok((r.value, r.abs_error_estimate))
}

pub(super) fn laplace_theta_negative(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&THETA_LAMS);
    let xs = [0.1, 1.0, 5.0];
    let mut v = Violations::new();
    for &lam in &lams {
        for &x in &xs {
            let (value, err) = laplace_integral(lam, x)?;
            v.strict(value + err, STRICT_MARGIN, || {
                format!("λ={lam} x={x} integral={value:e}")
            });
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "x ∈ {{0.1, 1, 5}}, integral plus its error estimate must be ≤ −{STRICT_MARGIN:e}; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn sum_inequalities(_config: &CheckConfig) -> Result<Measured> {
    let ts: [f64; 4] = [0.01, 0.1, 1.0, 10.0];
    let mut v = Violations::new();
    for &t in &ts {
        let n_max = (745.0 / t).sqrt().ceil() as i64 + 1;
        let e = |n: i64| (-t * (n * n) as f64).exp();
        let s1 = compensated_sum((1..=n_max).map(|n| {
            let s = if n % 2 == 1 { 1.0 } else { -1.0 };
            s * (n * n) as f64 * e(n)
        }));
        let s2 = compensated_sum((0..=n_max).map(|n| e(n) * (1.0 - 2.0 * t * (n * n) as f64)));
        let s3 = compensated_sum((1..=n_max).map(|n| {
            let m = n as f64;
            e(n) * (t * m * m * m - m)
        }));
        v.record(-s1, || format!("alternating n² sum t={t}"));
        v.record(0.5 - s2, || format!("(1 − 2tn²) sum t={t}"));
        v.record(-s3, || format!("(tn³ − n) sum t={t}"));
    }
    Ok(Measured {
        violations: v,
        grid: "t ∈ {0.01, 0.1, 1, 10}, sums to e^{-tn²} < e^{-745}".to_string(),
    })
}

pub(super) fn dawson_bounds(config: &CheckConfig) -> Result<Measured> {
    let n = config.points(181, 37);
    let mut v = Violations::new();
    for x in linspace(1.0, 10.0, n) {
        v.record(0.5 / x - dawson(x), || format!("1/(2x) x={x}"));
    }
    for x in linspace(2.0, 10.0, n) {
        v.record((x * x - 1.0) / (x * (2.0 * x * x - 3.0)) - dawson(x), || {
            format!("rational x={x}")
        });
    }
    Ok(Measured {
        violations: v,
        grid: format!("{n} points on [1, 10] and on [2, 10]"),
    })
}

pub(super) fn dawson_moments(_config: &CheckConfig) -> Result<Measured> {
    let mut v = Violations::new();
    let points: Vec<f64> = (0..=48).map(|k| 0.25 * k as f64).collect();
    for &x in &[0.3, 1.0, 2.5] {
        let d = dawson(x);
        let closed = [
            d,
            0.5 * x + d * (0.5 - x * x),
            1.25 * x - 0.5 * x.powi(3) + d * (0.75 - 3.0 * x * x + x.powi(4)),
        ];
        for (j, c) in [0, 2, 4].into_iter().zip(closed) {
            let numeric = Adaptive::new(1e-14)
                .integrate_over(|u| u.powi(j) * (-u * u).exp() * (2.0 * x * u).sin(), &points)?
                .value;
            v.record((numeric - c).abs(), || format!("j={j} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: "x ∈ {0.3, 1, 2.5}, j ∈ {0, 2, 4}, quadrature on [0, 12]".to_string(),
    })
}

pub(super) fn truncated_theta_inequalities(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&THETA_LAMS);
    let negative = linspace(-6.0, -1e-3, config.points(601, 121));
    let unit = linspace(0.0, 0.5, 51);
    let mut v = Violations::new();
    for &lam in &lams {
        let tp0 = theta_plus(0.0, lam);
        let vp0 = vartheta_plus(0.0, lam);
        for &x in &negative {
            let g = gaussian(lam, x);
            let vp = vartheta_plus(x, lam);
            v.record(theta_plus(x, lam) - tp0 * g, || format!("θ⁺(x) ≤ θ⁺(0)G λ={lam} x={x}"));
            v.record(vp - vp0 * g, || format!("ϑ⁺(x) ≤ ϑ⁺(0)G λ={lam} x={x}"));
            v.record(vp0 * g - vp - 0.5 * gaussian_prime(lam, x), || {
                format!("ϑ⁺(0)G − ϑ⁺(x) ≤ G′/2 λ={lam} x={x}")
            });
        }
        for &x in &unit {
            v.record(vp0 * gaussian(lam, x) - vp0, || format!("ϑ⁺(0)G ≤ ϑ⁺(0) λ={lam} x={x}"));
            v.record(vp0 - vartheta_plus(x, lam), || format!("ϑ⁺(0) ≤ ϑ⁺(x) λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "{} points on [−6, −0.001] and 51 on [0, 1/2]; λ ∈ {}",
            negative.len(),
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn truncated_theta_identities(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&THETA_LAMS);
    let xs = linspace(-3.0, 3.0, config.points(121, 25));
    let mut v = Violations::new();
    for &lam in &lams {
        let th = Theta::new(1.0 / lam)?;
        for &x in &xs {
            let lhs = -th.theta1(x) / lam.sqrt();
            let rhs = theta_plus(x, lam) + theta_plus(-x, lam) - gaussian(lam, x);
            v.record((lhs - rhs).abs() / (1.0 + lhs.abs()), || format!("θ₁ λ={lam} x={x}"));
            let lhs = th.theta3_dz(x) / lam.sqrt();
            let rhs = vartheta_plus(x, lam) - vartheta_plus(-x, lam) + gaussian_prime(lam, x);
            v.record((lhs - rhs).abs() / (1.0 + lhs.abs()), || format!("θ₃′ λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "{} points on [−3, 3], error relative to 1+|value|; λ ∈ {}",
            xs.len(),
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn growth_estimates(config: &CheckConfig) -> Result<Measured> {
    const SLACK: f64 = 1e-10;
    let lams = config.lams(&THETA_LAMS);
    let us = linspace(-4.0, 1.0, config.points(101, 21));
    let mut v = Violations::new();
    for &lam in &lams {
        let c = 2.0 * PI * lam / gaussian(lam, 1.0) * (1..=60).map(|n| n as f64 * gaussian(lam, n as f64)).sum::<f64>();
        for &u in &us {
            let bound = 2.0 * gaussian(lam, u - 1.0);
            for n in 1..=50 {
                let excess = (theta_plus_partial(u, lam, n).abs() - bound) / bound;
                v.bound(excess, SLACK, || format!("|θ⁺_N| λ={lam} u={u} N={n}"));
            }
            if u > 0.0 {
                continue;
            }
            let full = vartheta_plus(u, lam);
            let bound = c * (u.abs() + 1.0) * gaussian(lam, 1.0 - u);
            v.bound((full - bound) / bound, SLACK, || {
                format!("ϑ⁺ ≤ c(|u|+1)G λ={lam} u={u}")
            });
            for n in 1..=50 {
                let partial = vartheta_plus_partial(u, lam, n);
                v.bound(-partial / bound, SLACK, || format!("ϑ⁺_N ≥ 0 λ={lam} u={u} N={n}"));
                // ϑ⁺ drops terms below 1e-18, so compare absolutely
                v.bound(partial - full, SLACK, || format!("ϑ⁺_N ≤ ϑ⁺ λ={lam} u={u} N={n}"));
            }
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "{} points on [−4, 1], N ∈ 1..=50, normalized by slack {SLACK:e} (relative to the bound, absolute for ϑ⁺_N ≤ ϑ⁺); λ ∈ {}",
            us.len(),
            fmt_lams(&lams)
        ),
    })
}
