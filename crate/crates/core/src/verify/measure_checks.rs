use std::f64::consts::PI;

use super::{fmt_lams, linspace, off_integer_grid, CheckConfig, Measured, Violations};
use crate::error::Result;
use crate::extremal::{Approximant, Kind, Parity};
use crate::measures::{
    arctan_measure, arctan_target, derivative_sample_bounds, derivative_sample_sum, integrated_error,
    integrated_error_with_parity, Condition, IntegratedTarget, MeasureRep,
};
use crate::special::sin_pi;

const KINDS: [Kind; 3] = [Kind::BestApprox, Kind::Minorant, Kind::Majorant];

pub(super) fn summability_bounds(_config: &CheckConfig) -> Result<Measured> {
    let mut v = Violations::new();
    for &lam in &[1e-3, 1.0, 1e3] {
        let sum = derivative_sample_sum(lam)?;
        let (small, large) = derivative_sample_bounds(lam)?;
        v.record((sum - small) / small, || format!("small-λ bound λ={lam}"));
        v.record((sum - large) / large, || format!("large-λ bound λ={lam}"));
    }
    Ok(Measured {
        violations: v,
        grid: "λ ∈ {1e-3, 1, 1e3}, excess relative to the bound".to_string(),
    })
}

pub(super) fn measure_point_mass(config: &CheckConfig) -> Result<Measured> {
    let lams = config.lams(&[0.5, 1.0, 2.0]);
    let xs = linspace(-4.0, 4.0, config.points(33, 9));
    let mut v = Violations::new();
    for &lam in &lams {
        let m = MeasureRep::point_mass(lam, 1.0)?;
        for parity in [Parity::Truncated, Parity::Odd] {
            let t = IntegratedTarget::new(m.clone(), parity);
            for kind in KINDS {
                let a = Approximant::new(kind, parity, lam)?;
                for &x in &xs {
                    v.record((t.eval_g(x) - a.target(x)).abs(), || {
                        format!("g {parity:?} λ={lam} x={x}")
                    });
                    v.record((t.eval(kind, x)? - a.eval(x)).abs(), || {
                        format!("{} {parity:?} λ={lam} x={x}", kind.name())
                    });
                }
                let e = integrated_error_with_parity(kind, parity, &m)?;
                v.record((e - a.error()?.value).abs(), || {
                    format!("error {} {parity:?} λ={lam}", kind.name())
                });
            }
        }
    }
    // minorant error of δ₁ against 1 − θ₃(0, i)/2 from a direct series
    let t3: f64 = 1.0 + 2.0 * (1..=12).map(|n| (-PI * (n * n) as f64).exp()).sum::<f64>();
    let e = integrated_error(Kind::Minorant, &MeasureRep::point_mass(1.0, 1.0)?)?;
    v.record((e - (1.0 - 0.5 * t3)).abs(), || {
        "minorant error of δ₁ vs series".to_string()
    });
    Ok(Measured {
        violations: v,
        grid: format!(
            "{} points on [−4, 4], both parities; λ₀ ∈ {}",
            xs.len(),
            fmt_lams(&lams)
        ),
    })
}

pub(super) fn measure_linearity(config: &CheckConfig) -> Result<Measured> {
    let atoms = [(1.0, 0.25), (4.0, 0.75)];
    let xs = linspace(-4.0, 4.0, config.points(33, 9));
    let both = MeasureRep::from_atoms(atoms.to_vec())?;
    let parts: Vec<MeasureRep> = atoms
        .iter()
        .map(|&(l, w)| MeasureRep::point_mass(l, w))
        .collect::<Result<_>>()?;
    let mut v = Violations::new();
    for kind in KINDS {
        let whole = integrated_error(kind, &both)?;
        let split = parts.iter().map(|p| integrated_error(kind, p)).sum::<Result<f64>>()?;
        v.record((whole - split).abs(), || format!("error {}", kind.name()));
    }
    let t = IntegratedTarget::new(both, Parity::Truncated);
    let ts: Vec<IntegratedTarget> = parts
        .into_iter()
        .map(|p| IntegratedTarget::new(p, Parity::Truncated))
        .collect();
    for &x in &xs {
        let split: f64 = ts.iter().map(|p| p.eval_g(x)).sum();
        v.record((t.eval_g(x) - split).abs(), || format!("g x={x}"));
        for kind in KINDS {
            let split = ts.iter().map(|p| p.eval(kind, x)).sum::<Result<f64>>()?;
            v.record((t.eval(kind, x)? - split).abs(), || format!("{} x={x}", kind.name()));
        }
    }
    Ok(Measured {
        violations: v,
        grid: format!("atoms {{(1, 0.25), (4, 0.75)}}, {} points on [−4, 4]", xs.len()),
    })
}

pub(super) fn measure_admissibility(_config: &CheckConfig) -> Result<Measured> {
    let mut v = Violations::new();
    let m = MeasureRep::point_mass(1.0, 1.0)?;
    for (condition, expected) in [(Condition::Nu1, 0.5), (Condition::Nu2, 1.0)] {
        let r = m.check_admissible(condition);
        let miss = if r.is_admissible() {
            (r.value - expected).abs()
        } else {
            f64::INFINITY
        };
        v.record(miss, || format!("{condition:?} of δ₁"));
    }
    let two = MeasureRep::from_atoms(vec![(1.0, 0.3), (4.0, 0.7)])?;
    let r = two.check_admissible(Condition::Nu1);
    let expected = 0.3 / 2.0 + 0.7 / 3.0;
    let miss = if r.is_admissible() {
        (r.value - expected).abs()
    } else {
        f64::INFINITY
    };
    v.record(miss, || "Nu1 of two atoms".to_string());
    Ok(Measured {
        violations: v,
        grid: "δ₁ and {(1, 0.3), (4, 0.7)}".to_string(),
    })
}

pub(super) fn arctan_example(_config: &CheckConfig) -> Result<Measured> {
    let m = arctan_measure()?;
    let mut v = Violations::new();
    let r = m.check_admissible(Condition::Nu2);
    v.record(if r.is_admissible() { 0.0 } else { f64::INFINITY }, || {
        format!("total mass {}", r.value)
    });
    let t = IntegratedTarget::new(m, Parity::Odd);
    for &x in &[0.5, 1.0, 2.0] {
        let g = t.eval_g(x);
        v.record((g - arctan_target(x)).abs(), || format!("x={x} g={g}"));
    }
    // the target decays like 2/(3x³)
    let (g5, g10) = (t.eval_g(5.0), t.eval_g(10.0));
    let decay = if g10 < g5 && g10 > 0.0 { 0.0 } else { f64::INFINITY };
    v.record(decay, || format!("tail g(5)={g5} g(10)={g10}"));
    Ok(Measured {
        violations: v,
        grid: "x ∈ {0.5, 1, 2}, tail at {5, 10}, log-spaced density nodes on [1e-4, 1e4]".to_string(),
    })
}

fn two_atoms() -> Result<IntegratedTarget> {
    Ok(IntegratedTarget::new(
        MeasureRep::from_atoms(vec![(0.5, 1.0), (2.0, 1.0)])?,
        Parity::Truncated,
    ))
}

pub(super) fn integrated_sign_condition(config: &CheckConfig) -> Result<Measured> {
    let t = two_atoms()?;
    let xs = off_integer_grid(-8.0, 8.0, config.points(1601, 401));
    let mut v = Violations::new();
    for &x in &xs {
        let g = t.eval_g(x);
        let k = t.eval(Kind::BestApprox, x)?;
        v.record(-sin_pi(x) * (g - k), || format!("sign x={x}"));
        v.record(t.eval(Kind::Minorant, x)? - g, || format!("minorant x={x}"));
        v.record(g - t.eval(Kind::Majorant, x)?, || format!("majorant x={x}"));
    }
    Ok(Measured {
        violations: v,
        grid: format!(
            "atoms {{(0.5, 1), (2, 1)}}, {} points on [−8, 8] off the integers",
            xs.len()
        ),
    })
}

pub(super) fn integrated_l1_identity(_config: &CheckConfig) -> Result<Measured> {
    let t = two_atoms()?;
    let mut v = Violations::new();
    for kind in KINDS {
        let numeric = t.l1_error_numeric(kind, 1e-8)?.value;
        let closed = integrated_error(kind, t.measure())?;
        v.record((numeric - closed).abs(), || {
            format!("{} numeric={numeric} closed={closed}", kind.name())
        });
    }
    Ok(Measured {
        violations: v,
        grid: "atoms {(0.5, 1), (2, 1)}, L¹ quadrature to 1e-8".to_string(),
    })
}
