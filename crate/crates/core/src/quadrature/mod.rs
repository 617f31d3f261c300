//! Adaptive Gauss–Kronrod integration.
//!
//! The engine bisects the panel with the largest error estimate until the
//! summed estimate meets the requested tolerance (globally adaptive, in the
//! style of QUADPACK's `qag`). Refinement decisions depend only on the
//! integrand values, so results are deterministic.
//!
//! Besides the plain engine this module hosts the specialised integrals the
//! rest of the crate relies on: whole-line integrals of Gaussian-decaying
//! functions, L¹ distances with kink splitting and oscillatory tails
//! ([`l1`]), the optimal-error integral `H(λ)` ([`h`]) and iterated 2D
//! integrals over quadrants.

pub mod h;
pub mod l1;

pub use h::{fourier_sum, h_lambda, h_lambda_with, h_profile, h_t, FourierSum, HMethod, HProfile};
pub use l1::{l1_distance, Carrier, FarField, L1Options};

use crate::error::{Error, Result};

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

impl QuadResult {
    fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            abs_error_estimate: self.abs_error_estimate + other.abs_error_estimate,
            evaluations: self.evaluations + other.evaluations,
        }
    }

    fn zero() -> QuadResult {
        QuadResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 0,
        }
    }
}

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    resabs: f64,
    splittable: bool,
}

fn gauss_kronrod_15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = 0.5 * resk;
    let mut resasc = WGK[7] * (fc - reskh).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let value = resk * half;
    let resabs = resabs * half.abs();
    let resasc = resasc * half.abs();
    let mut error = ((resk - resg) * half).abs();
    if resasc != 0.0 && error != 0.0 {
        error = resasc * (200.0 * error / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * resabs);
    }
    let width_floor = 64.0 * f64::EPSILON * (a.abs().max(b.abs()) + f64::MIN_POSITIVE);
    Panel {
        a,
        b,
        value,
        error,
        resabs,
        splittable: (b - a).abs() > width_floor,
    }
}

/// Configuration of the adaptive engine.
#[derive(Debug, Clone, Copy)]
pub struct Adaptive {
    abs_tol: f64,
    rel_tol: f64,
    max_panels: usize,
}

impl Adaptive {
    pub fn new(abs_tol: f64) -> Self {
        Adaptive {
            abs_tol,
            rel_tol: 0.0,
            max_panels: 4000,
        }
    }

    pub fn rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn max_panels(mut self, max_panels: usize) -> Self {
        self.max_panels = max_panels;
        self
    }

    /// Integrates `f` over `[points[0], points[last]]`, starting with one
    /// panel between each pair of consecutive breakpoints.
    pub fn integrate_over<F: FnMut(f64) -> f64>(&self, mut f: F, points: &[f64]) -> Result<QuadResult> {
        if points.len() < 2 {
            return Ok(QuadResult::zero());
        }
        for w in points.windows(2) {
            if w[0].is_nan() || w[1].is_nan() || w[0] > w[1] {
                return Err(Error::Domain {
                    name: "breakpoints",
                    value: w[1],
                    reason: "breakpoints must be finite and non-decreasing",
                });
            }
        }
        let mut panels: Vec<Panel> = points
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| gauss_kronrod_15(&mut f, w[0], w[1]))
            .collect();
        let mut evaluations = 15 * panels.len();
        if panels.is_empty() {
            return Ok(QuadResult::zero());
        }
        loop {
            let (value, error, resabs) = totals(&panels);
            let target = self
                .abs_tol
                .max(self.rel_tol * value.abs())
                .max(100.0 * f64::EPSILON * resabs);
            if error <= target {
                return Ok(QuadResult {
                    value,
                    abs_error_estimate: error,
                    evaluations,
                });
            }
            let worst = panels
                .iter()
                .enumerate()
                .filter(|(_, p)| p.splittable)
                .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
                .map(|(i, _)| i);
            let Some(worst) = worst else {
                return Err(Error::NoConvergence {
                    value,
                    error_estimate: error,
                    evaluations,
                });
            };
            if panels.len() >= self.max_panels {
                return Err(Error::NoConvergence {
                    value,
                    error_estimate: error,
                    evaluations,
                });
            }
            let p = panels[worst];
            let mid = 0.5 * (p.a + p.b);
            let left = gauss_kronrod_15(&mut f, p.a, mid);
            let right = gauss_kronrod_15(&mut f, mid, p.b);
            evaluations += 30;
            panels[worst] = left;
            panels.push(right);
        }
    }
}

fn totals(panels: &[Panel]) -> (f64, f64, f64) {
    let value = compensated_sum(panels.iter().map(|p| p.value));
    let error = panels.iter().map(|p| p.error).sum();
    let resabs = panels.iter().map(|p| p.resabs).sum();
    (value, error, resabs)
}

/// Neumaier's compensated summation.
pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> f64 {
    let mut sum = 0.0f64;
    let mut c = 0.0f64;
    for t in terms {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            c += (sum - s) + t;
        } else {
            c += (t - s) + sum;
        }
        sum = s;
    }
    sum + c
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    if a >= b || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain {
            name: "interval",
            value: b - a,
            reason: "need finite a < b",
        });
    }
    crate::error::require_positive("tol", tol)?;
    Adaptive::new(tol).integrate_over(f, &[a, b])
}

/// Half-width of the window `[-W, W]` outside of which a Gaussian envelope
/// `exp(-pi * scale * x^2)` drops below `tol / 10`.
pub fn gaussian_window(tol: f64, decay_scale: f64) -> f64 {
    (((10.0 / tol).ln()) / (std::f64::consts::PI * decay_scale))
        .sqrt()
        .max(3.0)
}

/// Integrates a function with Gaussian (or faster) decay over the real line.
///
/// `decay_scale` is the `λ` of the envelope `exp(-πλx²)`. The window is split
/// at the origin so that integrands with a jump there (truncated Gaussians)
/// are handled exactly.
pub fn integrate_line<F: FnMut(f64) -> f64>(f: F, tol: f64, decay_scale: f64) -> Result<QuadResult> {
    crate::error::require_positive("tol", tol)?;
    crate::error::require_positive("decay_scale", decay_scale)?;
    let w = gaussian_window(tol, decay_scale);
    Adaptive::new(tol).integrate_over(f, &[-w, 0.0, w])
}

/// One axis of a 2D integration region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `(-∞, 0]`
    Negative,
    /// `[0, ∞)`
    Positive,
    /// `(-∞, ∞)`
    Whole,
}

impl Axis {
    fn clip(self, half_width: f64) -> (f64, f64) {
        match self {
            Axis::Negative => (-half_width, 0.0),
            Axis::Positive => (0.0, half_width),
            Axis::Whole => (-half_width, half_width),
        }
    }
}

/// A product region `t ∈ outer`, `u ∈ inner`, truncated to a square window.
#[derive(Debug, Clone, Copy)]
pub struct Region2d {
    pub outer: Axis,
    pub inner: Axis,
    /// Both axes are truncated to `[-half_width, half_width]`.
    pub half_width: f64,
    /// Each axis starts with panels of at most this width.
    pub panel_width: f64,
}

fn axis_points(axis: Axis, half_width: f64, panel_width: f64) -> Vec<f64> {
    let (a, b) = axis.clip(half_width);
    let n = ((b - a) / panel_width).ceil().max(1.0) as usize;
    (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect()
}

/// Iterated integral `∫_outer ∫_inner f(t, u) du dt`.
///
/// The tolerance is split in half between the axes; the inner tolerance is
/// further divided by the outer length so the accumulated inner error stays
/// within its share.
pub fn integrate_2d<F: Fn(f64, f64) -> f64>(f: F, region: &Region2d, tol: f64) -> Result<QuadResult> {
    crate::error::require_positive("tol", tol)?;
    crate::error::require_positive("half_width", region.half_width)?;
    crate::error::require_positive("panel_width", region.panel_width)?;
    let outer_pts = axis_points(region.outer, region.half_width, region.panel_width);
    let inner_pts = axis_points(region.inner, region.half_width, region.panel_width);
    let outer_len = outer_pts[outer_pts.len() - 1] - outer_pts[0];
    let inner_engine = Adaptive::new(0.5 * tol / outer_len);
    let mut inner_stats = QuadResult::zero();
    let mut failure: Option<Error> = None;
    let outer = Adaptive::new(0.5 * tol).integrate_over(
        |t| match inner_engine.integrate_over(|u| f(t, u), &inner_pts) {
            Ok(r) => {
                inner_stats.evaluations += r.evaluations;
                inner_stats.abs_error_estimate = inner_stats.abs_error_estimate.max(r.abs_error_estimate);
                r.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        &outer_pts,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let outer = outer?;
    Ok(QuadResult {
        value: outer.value,
        abs_error_estimate: outer.abs_error_estimate + outer_len * inner_stats.abs_error_estimate,
        evaluations: inner_stats.evaluations,
    }
    .combine(QuadResult::zero()))
}
