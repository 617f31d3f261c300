//! Extremal functions of exponential type for the truncated and odd Gaussian.
//!
//! For `G⁺_λ(x) = x⁺⁰ e^{-πλx²}` the optimal approximations are the
//! interpolation series
//!
//! ```text
//! K⁺(z) = (sin πz/π)   Σ_{n≥1} (-1)^n G(n) {1/(z-n) - 1/z}
//! L⁺(z) = (sin²πz/π²)  Σ_{n≥1} {G(n)/(z-n)² + G′(n)/(z-n) - G′(n)/z}
//! M⁺(z) = L⁺(z) + sin²πz/(π²z²)
//! ```
//!
//! `K⁺` has type `π` and `L⁺ ≤ G⁺ ≤ M⁺` have type `2π`. They are evaluated in
//! the equivalent normalized-sinc form, using `sin πz = (-1)^n sin π(z-n)`:
//!
//! ```text
//! K⁺(z) = Σ_{n≥1} G(n) φ(z-n) + θ⁺(0,λ) φ(z)
//! L⁺(z) = Σ_{n≥1} {G(n) + G′(n)(z-n)} φ(z-n)² − z φ(z)² Σ_{n≥1} G′(n)
//! ```
//!
//! with `φ(w) = sin(πw)/(πw)`. Every term is then a product of bounded smooth
//! factors, so the removable singularities at the integers need no limits.
//! In particular `K⁺(0) = θ⁺(0,λ) = Σ_{n≥1} (-1)^{n+1} G(n)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{require_positive, Result};
use crate::quadrature::{self, Carrier, FarField, L1Options, QuadResult};
use crate::special::{gaussian, gaussian_prime, odd_gaussian, sinc, theta3, truncated_gaussian};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    #[serde(rename = "best")]
    BestApprox,
    Minorant,
    Majorant,
}

impl Kind {
    /// Minorant and majorant swap under `x ↦ -x` in the odd construction.
    pub fn dual(self) -> Kind {
        match self {
            Kind::BestApprox => Kind::BestApprox,
            Kind::Minorant => Kind::Majorant,
            Kind::Majorant => Kind::Minorant,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::BestApprox => "best",
            Kind::Minorant => "minorant",
            Kind::Majorant => "majorant",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Truncated,
    Odd,
}

/// Precomputed samples `G(n)`, `G′(n)` for one `λ`.
#[derive(Debug, Clone)]
pub(crate) struct Series {
    lam: f64,
    g: Vec<f64>,
    gp: Vec<f64>,
    theta_plus0: f64,
    sum_gp: f64,
}

impl Series {
    pub(crate) fn new(lam: f64) -> Self {
        // G(N) < 1e-18
        let n_max = (41.5 / (PI * lam)).sqrt().ceil() as usize + 1;
        let g: Vec<f64> = (1..=n_max).map(|n| gaussian(lam, n as f64)).collect();
        let gp: Vec<f64> = (1..=n_max).map(|n| gaussian_prime(lam, n as f64)).collect();
        let theta_plus0 = g
            .iter()
            .enumerate()
            .map(|(i, v)| if i % 2 == 0 { *v } else { -*v })
            .sum();
        let sum_gp = gp.iter().sum();
        Series {
            lam,
            g,
            gp,
            theta_plus0,
            sum_gp,
        }
    }

    pub(crate) fn best(&self, z: f64) -> f64 {
        let mut s = self.theta_plus0 * sinc(z);
        for (i, g) in self.g.iter().enumerate() {
            s += g * sinc(z - (i + 1) as f64);
        }
        s
    }

    pub(crate) fn minorant(&self, z: f64) -> f64 {
        let mut s = -z * sinc(z).powi(2) * self.sum_gp;
        for (i, (g, gp)) in self.g.iter().zip(&self.gp).enumerate() {
            let w = z - (i + 1) as f64;
            s += (g + gp * w) * sinc(w).powi(2);
        }
        s
    }

    pub(crate) fn majorant(&self, z: f64) -> f64 {
        self.minorant(z) + sinc(z).powi(2)
    }

    pub(crate) fn truncated(&self, kind: Kind, z: f64) -> f64 {
        match kind {
            Kind::BestApprox => self.best(z),
            Kind::Minorant => self.minorant(z),
            Kind::Majorant => self.majorant(z),
        }
    }

    pub(crate) fn odd(&self, kind: Kind, z: f64) -> f64 {
        match kind {
            Kind::BestApprox => self.best(z) - self.best(-z),
            Kind::Minorant => self.minorant(z) - self.majorant(-z),
            Kind::Majorant => self.majorant(z) - self.minorant(-z),
        }
    }

    pub(crate) fn eval(&self, kind: Kind, parity: Parity, z: f64) -> f64 {
        match parity {
            Parity::Truncated => self.truncated(kind, z),
            Parity::Odd => self.odd(kind, z),
        }
    }

    /// `P_K(x) = Σ (-1)^n G(n)·n/(x(x-n))`, so that `K⁺ = (sin πx/π) P_K`.
    fn envelope_best(&self, x: f64) -> f64 {
        self.g
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let n = (i + 1) as f64;
                let s = if i % 2 == 0 { -1.0 } else { 1.0 };
                s * g * n / (x * (x - n))
            })
            .sum()
    }

    /// `P_L(x) = Σ {G(n)/(x-n)² + G′(n)·n/(x(x-n))}`, so that `L⁺ = (sin²πx/π²) P_L`.
    fn envelope_minorant(&self, x: f64) -> f64 {
        self.g
            .iter()
            .zip(&self.gp)
            .enumerate()
            .map(|(i, (g, gp))| {
                let n = (i + 1) as f64;
                g / ((x - n) * (x - n)) + gp * n / (x * (x - n))
            })
            .sum()
    }

    fn envelope_majorant(&self, x: f64) -> f64 {
        self.envelope_minorant(x) + 1.0 / (x * x)
    }

    pub(crate) fn envelope(&self, kind: Kind, parity: Parity, x: f64) -> f64 {
        match (parity, kind) {
            (Parity::Truncated, Kind::BestApprox) => self.envelope_best(x),
            (Parity::Truncated, Kind::Minorant) => self.envelope_minorant(x),
            (Parity::Truncated, Kind::Majorant) => self.envelope_majorant(x),
            (Parity::Odd, Kind::BestApprox) => self.envelope_best(x) + self.envelope_best(-x),
            (Parity::Odd, Kind::Minorant) => self.envelope_minorant(x) - self.envelope_majorant(-x),
            (Parity::Odd, Kind::Majorant) => self.envelope_majorant(x) - self.envelope_minorant(-x),
        }
    }

    pub(crate) fn lam(&self) -> f64 {
        self.lam
    }
}

pub(crate) fn target(parity: Parity, lam: f64, x: f64) -> f64 {
    match parity {
        Parity::Truncated => truncated_gaussian(lam, x),
        Parity::Odd => odd_gaussian(lam, x),
    }
}

/// One of the six extremal functions, optionally dilated.
///
/// The undilated function belongs to the parameter `lam`. With dilation
/// `δ` the approximant is `x ↦ F_lam(δx)`: it approximates
/// `x ↦ G⁺_lam(δx) = G⁺_{lam·δ²}(x)`, has type `πδ` (best) or `2πδ`
/// (one-sided), interpolates on `ℤ/δ \ {0}` and its L¹ error is the
/// undilated error divided by `δ`.
#[derive(Debug, Clone)]
pub struct Approximant {
    kind: Kind,
    parity: Parity,
    delta: f64,
    offset: f64,
    series: Series,
}

impl Approximant {
    pub fn new(kind: Kind, parity: Parity, lam: f64) -> Result<Self> {
        let lam = require_positive("lam", lam)?;
        Ok(Approximant {
            kind,
            parity,
            delta: 1.0,
            offset: 0.0,
            series: Series::new(lam),
        })
    }

    /// The approximant of type `πδ` / `2πδ` to the Gaussian with parameter
    /// `target_lam`, built from the undilated one with parameter `target_lam/δ²`.
    pub fn for_target(kind: Kind, parity: Parity, target_lam: f64, delta: f64) -> Result<Self> {
        let target_lam = require_positive("lam", target_lam)?;
        let delta = require_positive("delta", delta)?;
        Approximant::new(kind, parity, target_lam / (delta * delta))?.dilate(delta)
    }

    /// Composes with a further dilation `x ↦ δx`.
    pub fn dilate(self, delta: f64) -> Result<Self> {
        let delta = require_positive("delta", delta)?;
        Ok(Approximant {
            delta: self.delta * delta,
            ..self
        })
    }

    /// Adds a constant to every evaluation. Only useful to demonstrate that
    /// the verification checks detect a wrong approximant.
    pub fn with_offset(self, offset: f64) -> Self {
        Approximant { offset, ..self }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Parameter of the undilated function.
    pub fn lam(&self) -> f64 {
        self.series.lam
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Parameter of the Gaussian being approximated, `lam·δ²`.
    pub fn target_lam(&self) -> f64 {
        self.series.lam * self.delta * self.delta
    }

    pub fn exponential_type(&self) -> f64 {
        match self.kind {
            Kind::BestApprox => PI * self.delta,
            _ => 2.0 * PI * self.delta,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.series.eval(self.kind, self.parity, self.delta * x) + self.offset
    }

    /// The function being approximated.
    pub fn target(&self, x: f64) -> f64 {
        target(self.parity, self.series.lam, self.delta * x)
    }

    /// Central difference `(F(x+h) - F(x-h)) / 2h`.
    pub fn derivative(&self, x: f64, h: f64) -> f64 {
        (self.eval(x + h) - self.eval(x - h)) / (2.0 * h)
    }

    /// The interpolation node `k/δ`.
    pub fn node(&self, k: i64) -> f64 {
        k as f64 / self.delta
    }

    /// Closed-form minimal L¹ error.
    pub fn error(&self) -> Result<ErrorValue> {
        let lam = self.series.lam;
        let base = match (self.parity, self.kind) {
            (Parity::Truncated, Kind::BestApprox) => quadrature::h_lambda(lam)?,
            (Parity::Truncated, Kind::Minorant) => minorant_error_value(lam)?,
            (Parity::Truncated, Kind::Majorant) => majorant_error_value(lam)?,
            (Parity::Odd, Kind::BestApprox) => 2.0 * quadrature::h_lambda(lam)?,
            // E_L + E_M
            (Parity::Odd, _) => 1.0,
        };
        Ok(ErrorValue {
            value: base / self.delta,
            kind: self.kind,
        })
    }

    /// `∫|target − F|` by quadrature, independent of the closed forms.
    pub fn l1_error_numeric(&self, tol: f64) -> Result<QuadResult> {
        let lam = self.series.lam;
        let delta = self.delta;
        // in undilated coordinates the target must be negligible beyond W
        let w_base = ((1e3 / tol).ln() / (PI * lam)).sqrt().max(30.0).ceil();
        let half_width = w_base / delta;
        let k = w_base as i64;
        let breakpoints: Vec<f64> = (-k..=k).map(|j| j as f64 / delta).collect();
        let series = &self.series;
        let (kind, parity) = (self.kind, self.parity);
        let envelope = move |x: f64| series.envelope(kind, parity, delta * x);
        let carrier = match kind {
            Kind::BestApprox => Carrier::AbsSine,
            _ => Carrier::SineSquared,
        };
        let mut opts = L1Options::new(tol, half_width)
            .breakpoints(breakpoints)
            .far_field(FarField {
                carrier,
                delta,
                envelope: &envelope,
            });
        opts.scan_step = 1e-2 / delta;
        quadrature::l1_distance(|x| self.target(x), |x| self.eval(x), &opts)
    }
}

/// Free-function form of [`Approximant::dilate`].
pub fn dilate(a: Approximant, delta: f64) -> Result<Approximant> {
    a.dilate(delta)
}

/// A minimal L¹ error together with the problem it solves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorValue {
    pub value: f64,
    pub kind: Kind,
}

fn minorant_error_value(lam: f64) -> Result<f64> {
    Ok(-0.5 * theta3(0.0, lam)? + 0.5 + 0.5 / lam.sqrt())
}

fn majorant_error_value(lam: f64) -> Result<f64> {
    Ok(0.5 * theta3(0.0, lam)? + 0.5 - 0.5 / lam.sqrt())
}

/// `H(λ)`: the least `∫|G⁺_λ − K|` over `K` of exponential type `π`.
pub fn error_best(lam: f64) -> Result<ErrorValue> {
    Ok(ErrorValue {
        value: quadrature::h_lambda(lam)?,
        kind: Kind::BestApprox,
    })
}

/// `-θ₃(0,iλ)/2 + 1/2 + 1/(2√λ)`: the least `∫(G⁺_λ − L)` over minorants of type `2π`.
pub fn error_minorant(lam: f64) -> Result<ErrorValue> {
    Ok(ErrorValue {
        value: minorant_error_value(require_positive("lam", lam)?)?,
        kind: Kind::Minorant,
    })
}

/// `θ₃(0,iλ)/2 + 1/2 − 1/(2√λ)`: the least `∫(M − G⁺_λ)` over majorants of type `2π`.
pub fn error_majorant(lam: f64) -> Result<ErrorValue> {
    Ok(ErrorValue {
        value: majorant_error_value(require_positive("lam", lam)?)?,
        kind: Kind::Majorant,
    })
}

pub fn eval_best_truncated(lam: f64, x: f64) -> Result<f64> {
    Ok(Series::new(require_positive("lam", lam)?).best(x))
}

pub fn eval_minorant_truncated(lam: f64, x: f64) -> Result<f64> {
    Ok(Series::new(require_positive("lam", lam)?).minorant(x))
}

pub fn eval_majorant_truncated(lam: f64, x: f64) -> Result<f64> {
    Ok(Series::new(require_positive("lam", lam)?).majorant(x))
}

pub fn eval_odd(kind: Kind, lam: f64, x: f64) -> Result<f64> {
    Ok(Series::new(require_positive("lam", lam)?).odd(kind, x))
}
