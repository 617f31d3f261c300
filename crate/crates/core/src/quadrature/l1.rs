//! L¹ distances `∫|f − g|` over the real line.
//!
//! `|f − g|` is only piecewise smooth, so the integration window is split at
//! every sign change of `f − g`. Sign changes are located by scanning on a
//! fine grid and refined by bisection. Outside the window the difference may
//! decay only algebraically (the interpolation series approach their target
//! like `x⁻²`); a [`FarField`] model supplies the analytic tail in that case.

use std::f64::consts::PI;

use super::{Adaptive, QuadResult};
use crate::error::{require_positive, Result};

/// Oscillating factor of a far-field difference `c(δx)·P(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Carrier {
    /// `|sin(πδx)| / π`
    AbsSine,
    /// `sin²(πδx) / π²`
    SineSquared,
}

/// Asymptotic form `|f − g|(x) = c(δx)·|P(x)|` valid for `|x| ≥ W`, where
/// `P` is smooth, eventually of one sign and decays at least like `x⁻²`.
pub struct FarField<'a> {
    pub carrier: Carrier,
    /// Frequency scale `δ`; the zeros of the carrier are `ℤ/δ`.
    pub delta: f64,
    /// The envelope `P`.
    pub envelope: &'a (dyn Fn(f64) -> f64 + Sync),
}

impl FarField<'_> {
    /// `∫_{|x| ≥ w} c(δx)|P(x)| dx` for `δw ∈ ℤ`, by averaging the carrier over
    /// its period with one boundary correction term.
    fn tail(&self, w: f64, tol: f64) -> Result<(f64, f64)> {
        let mut value = 0.0;
        let mut error = 0.0;
        for side in [1.0, -1.0] {
            let p = |x: f64| (self.envelope)(side * x).abs();
            // x = w/s maps [w, ∞) onto (0, 1]
            let mass = Adaptive::new(0.25 * tol).rel_tol(1e-12).integrate_over(
                |s: f64| if s == 0.0 { 0.0 } else { p(w / s) * w / (s * s) },
                &[0.0, 1.0],
            )?;
            let h = 1e-3 * w;
            let slope = (p(w + h) - p(w - h)) / (2.0 * h);
            let d2 = self.delta * self.delta;
            let (avg, corr) = match self.carrier {
                Carrier::AbsSine => (
                    2.0 / (PI * PI) * mass.value,
                    (2.0 - PI * PI / 6.0) / (PI.powi(4) * d2) * slope,
                ),
                Carrier::SineSquared => (mass.value / (2.0 * PI * PI), slope / (8.0 * PI.powi(4) * d2)),
            };
            value += avg + corr;
            // the next term of the expansion is O(P‴/δ⁴); bound it by the
            // correction scaled with (δw)^-2
            error += mass.abs_error_estimate + corr.abs() / (self.delta * w).powi(2);
        }
        Ok((value, error))
    }
}

/// Settings for [`l1_distance`].
pub struct L1Options<'a> {
    pub tol: f64,
    /// The window is `[-half_width, half_width]`.
    pub half_width: f64,
    /// Points where `f − g` may have kinks or jumps.
    pub breakpoints: Vec<f64>,
    /// Grid resolution of the sign-change scan.
    pub scan_step: f64,
    pub far_field: Option<FarField<'a>>,
}

impl<'a> L1Options<'a> {
    pub fn new(tol: f64, half_width: f64) -> Self {
        L1Options {
            tol,
            half_width,
            breakpoints: vec![0.0],
            scan_step: 1e-2,
            far_field: None,
        }
    }

    pub fn breakpoints(mut self, points: Vec<f64>) -> Self {
        self.breakpoints = points;
        self
    }

    pub fn far_field(mut self, far: FarField<'a>) -> Self {
        self.far_field = Some(far);
        self
    }
}

fn bisect<D: Fn(f64) -> f64>(d: &D, mut a: f64, mut b: f64, mut da: f64) -> f64 {
    while b - a > 1e-12 {
        let m = 0.5 * (a + b);
        let dm = d(m);
        if dm == 0.0 {
            return m;
        }
        if (dm > 0.0) == (da > 0.0) {
            a = m;
            da = dm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Zeros of `d` inside `(a, b)` found by scanning with the given step.
fn sign_changes<D: Fn(f64) -> f64>(d: &D, a: f64, b: f64, step: f64) -> Vec<f64> {
    let n = ((b - a) / step).ceil().max(1.0) as usize;
    let mut roots = Vec::new();
    // stay off the endpoints, where jumps are allowed
    let inset = 1e-12 * (1.0 + a.abs().max(b.abs()));
    let xs: Vec<f64> = (0..=n)
        .map(|k| {
            let x = a + (b - a) * k as f64 / n as f64;
            x.clamp(a + inset, b - inset)
        })
        .collect();
    let mut prev_x = xs[0];
    let mut prev = d(prev_x);
    for &x in &xs[1..] {
        let cur = d(x);
        if cur == 0.0 {
            roots.push(x);
        } else if prev != 0.0 && (prev > 0.0) != (cur > 0.0) {
            roots.push(bisect(d, prev_x, x, prev));
        }
        prev_x = x;
        prev = cur;
    }
    roots
}

/// `∫|f − g|` over the window in `opts`, plus the far-field tail if a model
/// is supplied.
pub fn l1_distance<F, G>(f: F, g: G, opts: &L1Options) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    require_positive("tol", opts.tol)?;
    require_positive("half_width", opts.half_width)?;
    require_positive("scan_step", opts.scan_step)?;
    let w = opts.half_width;
    let d = |x: f64| f(x) - g(x);
    let mut points: Vec<f64> = opts
        .breakpoints
        .iter()
        .copied()
        .filter(|p| p.abs() < w)
        .chain([-w, w])
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    let mut all = points.clone();
    for seg in points.windows(2) {
        all.extend(sign_changes(&d, seg[0], seg[1], opts.scan_step));
    }
    all.sort_by(f64::total_cmp);
    all.dedup();

    let tail_share = if opts.far_field.is_some() { 0.25 } else { 0.0 };
    let inner = Adaptive::new((1.0 - tail_share) * opts.tol)
        .max_panels(20_000)
        .integrate_over(|x| d(x).abs(), &all)?;
    let (tail, tail_err) = match &opts.far_field {
        Some(far) => far.tail(w, tail_share * opts.tol)?,
        None => (0.0, 0.0),
    };
    Ok(QuadResult {
        value: inner.value + tail,
        abs_error_estimate: inner.abs_error_estimate + tail_err,
        evaluations: inner.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_functions() {
        let opts = L1Options::new(1e-12, 5.0);
        let r = l1_distance(|x: f64| x.sin(), |x: f64| x.sin(), &opts).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn kink_is_located() {
        // ∫_{-1}^{1} |x - 0.3| dx = (1.3² + 0.7²)/2
        let opts = L1Options::new(1e-13, 1.0);
        let r = l1_distance(|x| x, |_| 0.3, &opts).unwrap();
        assert!((r.value - 0.5 * (1.69 + 0.49)).abs() < 1e-12);
    }

    #[test]
    fn abs_sine_tail_model() {
        // |sin πx| / (π x²) on |x| ≥ 1: the window covers [-20, 20], the rest comes
        // from the far-field model. Compare against a brute-force integral to 4000.
        let env = |x: f64| 1.0 / (x * x);
        let h = |x: f64| (PI * x).sin().abs() / PI * env(x);
        let far = FarField {
            carrier: Carrier::AbsSine,
            delta: 1.0,
            envelope: &env,
        };
        let tail = far.tail(20.0, 1e-12).unwrap().0;
        let mut pts: Vec<f64> = (20..=4000).map(|k| k as f64).collect();
        pts.dedup();
        let brute = Adaptive::new(1e-13)
            .max_panels(100_000)
            .integrate_over(h, &pts)
            .unwrap()
            .value;
        // remainder beyond 4000 by the averaged model; the model itself is
        // accurate to O(W^-5), about 1.4e-9 here
        let rest = 2.0 / (PI * PI) / 4000.0;
        assert!(
            (tail - 2.0 * (brute + rest)).abs() < 5e-9,
            "{tail} {}",
            2.0 * (brute + rest)
        );
    }

    #[test]
    fn sine_squared_tail_model() {
        let env = |x: f64| 1.0 / (x * x) + 0.5 / x.powi(3);
        let far = FarField {
            carrier: Carrier::SineSquared,
            delta: 2.0,
            envelope: &env,
        };
        let w = 10.0;
        let tail = far.tail(w, 1e-12).unwrap().0;
        let h = |x: f64| (2.0 * PI * x).sin().powi(2) / (PI * PI) * env(x).abs();
        let pts: Vec<f64> = (20..=8000).map(|k| k as f64 * 0.5).collect();
        let pos = Adaptive::new(1e-13)
            .max_panels(100_000)
            .integrate_over(h, &pts)
            .unwrap()
            .value
            + (1.0 / 4000.0 + 0.25 / 4000.0f64.powi(2)) / (2.0 * PI * PI);
        let neg = Adaptive::new(1e-13)
            .max_panels(100_000)
            .integrate_over(|x| h(-x), &pts)
            .unwrap()
            .value
            + (1.0 / 4000.0 - 0.25 / 4000.0f64.powi(2)) / (2.0 * PI * PI);
        assert!((tail - pos - neg).abs() < 1e-9, "{tail} {}", pos + neg);
    }
}
