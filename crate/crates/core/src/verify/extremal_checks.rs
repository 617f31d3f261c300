use std::f64::consts::PI;

use super::{fmt_lams, off_integer_grid, CheckConfig, Measured, Violations};
use crate::error::Result;
use crate::extremal::{Approximant, Kind, Parity};
use crate::special::{gaussian_prime, sin_pi};

const SIGN_LAMS: [f64; 3] = [0.25, 1.0, 4.0];
const ERROR_LAMS: [f64; 3] = [0.5, 1.0, 2.0];
const L1_TOL: f64 = 1e-9;

fn sign_grid(config: &CheckConfig) -> Vec<f64> {
    off_integer_grid(-8.0, 8.0, config.points(4001, 801))
}

fn grid_text(config: &CheckConfig, lams: &[f64]) -> String {
    format!(
        "{} points on [-8, 8], points within 1e-3 of an integer moved out to 1e-3; λ ∈ {}",
        config.points(4001, 801),
        fmt_lams(lams)
    )
}

fn sign_condition(config: &CheckConfig, parity: Parity) -> Result<Measured> {
    let lams = config.lams(&SIGN_LAMS);
    let xs = sign_grid(config);
    let mut v = Violations::new();
    for &lam in &lams {
        let k = Approximant::new(Kind::BestApprox, parity, lam)?.with_offset(config.perturbation);
        for &x in &xs {
            let value = sin_pi(x) * (k.target(x) - k.eval(x));
            v.record(-value, || format!("λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: grid_text(config, &lams),
    })
}

pub(super) fn sign_condition_truncated(config: &CheckConfig) -> Result<Measured> {
    sign_condition(config, Parity::Truncated)
}

pub(super) fn odd_sign_condition(config: &CheckConfig) -> Result<Measured> {
    sign_condition(config, Parity::Odd)
}

fn sandwich(config: &CheckConfig, parity: Parity) -> Result<Measured> {
    let lams = config.lams(&SIGN_LAMS);
    let xs = sign_grid(config);
    let mut v = Violations::new();
    for &lam in &lams {
        let l = Approximant::new(Kind::Minorant, parity, lam)?;
        let m = Approximant::new(Kind::Majorant, parity, lam)?;
        for &x in &xs {
            let g = l.target(x);
            v.record(l.eval(x) - g, || format!("minorant λ={lam} x={x}"));
            v.record(g - m.eval(x), || format!("majorant λ={lam} x={x}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: grid_text(config, &lams),
    })
}

pub(super) fn sandwich_truncated(config: &CheckConfig) -> Result<Measured> {
    sandwich(config, Parity::Truncated)
}

pub(super) fn odd_sandwich(config: &CheckConfig) -> Result<Measured> {
    sandwich(config, Parity::Odd)
}

pub(super) fn ba_error_closed_form(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&ERROR_LAMS);
    let mut v = Violations::new();
    for &lam in &lams {
        let k = Approximant::new(Kind::BestApprox, Parity::Truncated, lam)?;
        let numeric = k.l1_error_numeric(L1_TOL)?.value;
        let closed = k.error()?.value;
        v.record((numeric - closed).abs(), || {
            format!("λ={lam} numeric={numeric} H={closed}")
        });
    }
    Ok(Measured {
        violations: v,
        grid: format!("adaptive L¹ quadrature to {L1_TOL:e}; λ ∈ {}", fmt_lams(&lams)),
    })
}

/// `θ₃(0, iλ)` by direct summation of `Σ e^{-πλn²}`.
fn theta3_oracle(lam: f64) -> f64 {
    let n_max = (40.0 / (PI * lam)).sqrt().ceil() as i64 + 2;
    1.0 + 2.0 * (1..=n_max).map(|n| (-PI * lam * (n * n) as f64).exp()).sum::<f64>()
}

fn one_sided_error(config: &CheckConfig, kind: Kind) -> Result<Measured> {
    let lams = config.lams(&ERROR_LAMS);
    let mut v = Violations::new();
    for &lam in &lams {
        let t3 = theta3_oracle(lam);
        let oracle = match kind {
            Kind::Minorant => 0.5 + 0.5 / lam.sqrt() - 0.5 * t3,
            _ => 0.5 - 0.5 / lam.sqrt() + 0.5 * t3,
        };
        let a = Approximant::new(kind, Parity::Truncated, lam)?;
        let numeric = a.l1_error_numeric(L1_TOL)?.value;
        let closed = a.error()?.value;
        v.record((numeric - oracle).abs(), || {
            format!("λ={lam} numeric={numeric} oracle={oracle}")
        });
        v.record((closed - oracle).abs(), || {
            format!("λ={lam} closed={closed} oracle={oracle}")
        });
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "adaptive L¹ quadrature to {L1_TOL:e} against a direct θ₃ series; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn minorant_error(config: &CheckConfig) -> Result<Measured> {
    one_sided_error(config, Kind::Minorant)
}

pub(super) fn majorant_error(config: &CheckConfig) -> Result<Measured> {
    one_sided_error(config, Kind::Majorant)
}

fn nodes() -> impl Iterator<Item = i64> {
    (-20..=20).filter(|&n| n != 0)
}

pub(super) fn interpolation_best(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&SIGN_LAMS);
    let mut v = Violations::new();
    for &lam in &lams {
        let k = Approximant::new(Kind::BestApprox, Parity::Truncated, lam)?.with_offset(config.perturbation);
        for n in nodes() {
            let x = n as f64;
            v.record((k.eval(x) - k.target(x)).abs(), || format!("λ={lam} n={n}"));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("n ∈ {{-20..20}} \\ {{0}}; λ ∈ {}", fmt_lams(&lams)),
    })
}

pub(super) fn interpolation_onesided(config: &CheckConfig) -> Result<Measured> {
    const VALUE_TOL: f64 = 1e-12;
    const DERIVATIVE_TOL: f64 = 1e-7;
    const H: f64 = 1e-5;
    let lams = config.lams(&SIGN_LAMS);
    let mut v = Violations::new();
    for &lam in &lams {
        for kind in [Kind::Minorant, Kind::Majorant] {
            let a = Approximant::new(kind, Parity::Truncated, lam)?;
            let name = kind.name();
            for n in nodes() {
                let x = n as f64;
                let slope = if n > 0 { gaussian_prime(lam, x) } else { 0.0 };
                v.bound((a.eval(x) - a.target(x)).abs(), VALUE_TOL, || {
                    format!("{name} value λ={lam} n={n}")
                });
                v.bound((a.derivative(x, H) - slope).abs(), DERIVATIVE_TOL, || {
                    format!("{name} derivative λ={lam} n={n}")
                });
            }
            // the jump of G⁺ at the origin is bridged from 0 to 1
            let at_zero = if kind == Kind::Minorant { 0.0 } else { 1.0 };
            v.bound((a.eval(0.0) - at_zero).abs(), VALUE_TOL, || {
                format!("{name} value λ={lam} n=0")
            });
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "n ∈ {{-20..20}}, derivatives by central differences with h={H:e}; λ ∈ {}",
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn dilation_scaling(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.5, 1.0, 2.0]);
    let deltas = [0.5, 2.0];
    let mut v = Violations::new();
    for &lam in &lams {
        for &delta in &deltas {
            for kind in [Kind::BestApprox, Kind::Minorant] {
                let a = Approximant::for_target(kind, Parity::Truncated, lam, delta)?;
                let base = Approximant::new(kind, Parity::Truncated, lam / (delta * delta))?
                    .error()?
                    .value;
                let numeric = a.l1_error_numeric(L1_TOL)?.value;
                v.record((numeric - base / delta).abs(), || {
                    format!("{} λ={lam} δ={delta} numeric={numeric}", kind.name())
                });
            }
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("δ ∈ {{0.5, 2}}; target λ ∈ {}", fmt_lams(&lams)),
    })
}
