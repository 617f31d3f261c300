//! Superpositions `g(x) = x⁺⁰ ∫ e^{-πλx²} dν(λ)` of truncated (or odd)
//! Gaussians over a non-negative measure `ν` on `(0, ∞)`, and their
//! extremal approximations obtained by integrating the per-`λ` extremals.
//!
//! A measure is a finite list of atoms plus an optional sampled density.
//! Densities are integrated with the trapezoidal rule in `ln λ` on their node
//! set, so the results are only as good as the sampling window.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{self, Kind, Parity, Series};
use crate::quadrature::{self, Adaptive, Carrier, FarField, L1Options, QuadResult};
use crate::special::{theta3, Theta};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityKind {
    Arctan,
    Table,
}

/// A density sampled at nodes `λ_i`, with quadrature weights `q_i` such that
/// `∫ f dν ≈ Σ q_i f(λ_i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Density {
    pub kind: DensityKind,
    pub nodes: Vec<f64>,
    /// Density values `w(λ_i)`.
    pub values: Vec<f64>,
    pub quad_weights: Vec<f64>,
    /// Nodes whose density value could not be computed to tolerance.
    pub failed: Vec<bool>,
}

impl Density {
    /// Trapezoidal rule in `ln λ` over strictly increasing positive nodes.
    pub fn from_table(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() != values.len() {
            return Err(Error::InvalidMeasure(format!(
                "density has {} nodes but {} weights",
                nodes.len(),
                values.len()
            )));
        }
        if nodes.len() < 2 {
            return Err(Error::InvalidMeasure("density needs at least two nodes".into()));
        }
        if nodes.iter().any(|l| !(*l > 0.0 && l.is_finite())) || nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMeasure(
                "density nodes must be positive, finite and strictly increasing".into(),
            ));
        }
        if values.iter().any(|w| !(*w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidMeasure(
                "density values must be finite and non-negative".into(),
            ));
        }
        let quad_weights = log_trapezoid(&nodes, &values);
        let failed = vec![false; nodes.len()];
        Ok(Density {
            kind: DensityKind::Table,
            nodes,
            values,
            quad_weights,
            failed,
        })
    }
}

fn log_trapezoid(nodes: &[f64], values: &[f64]) -> Vec<f64> {
    let n = nodes.len();
    let mut q = vec![0.0; n];
    for i in 0..n - 1 {
        let h = nodes[i + 1].ln() - nodes[i].ln();
        q[i] += 0.5 * h;
        q[i + 1] += 0.5 * h;
    }
    q.iter()
        .zip(nodes.iter().zip(values))
        .map(|(h, (l, w))| h * l * w)
        .collect()
}

/// A non-negative measure on `(0, ∞)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MeasureRep {
    pub atoms: Vec<(f64, f64)>,
    pub density: Option<Density>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `∫ (1 + √λ)^{-1} dν < ∞`, needed for the best approximation and the minorant.
    Nu1,
    /// `∫ dν < ∞`, needed for the majorant.
    Nu2,
}

impl Condition {
    pub fn for_kind(kind: Kind) -> Condition {
        match kind {
            Kind::Majorant => Condition::Nu2,
            _ => Condition::Nu1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Condition::Nu1 => "nu1",
            Condition::Nu2 => "nu2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Admissible,
    NotAdmissible,
    /// The density could not be evaluated everywhere, or its sampled mass is
    /// still significant at the ends of the node window.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub status: Admissibility,
    pub value: f64,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.status == Admissibility::Admissible
    }
}

impl MeasureRep {
    pub fn point_mass(lam: f64, weight: f64) -> Result<Self> {
        MeasureRep::from_atoms(vec![(lam, weight)])
    }

    pub fn from_atoms(atoms: Vec<(f64, f64)>) -> Result<Self> {
        for &(lam, w) in &atoms {
            if !(lam > 0.0 && lam.is_finite()) {
                return Err(Error::InvalidMeasure(format!("atom location {lam} must be positive")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::InvalidMeasure(format!("atom weight {w} must be non-negative")));
            }
        }
        Ok(MeasureRep { atoms, density: None })
    }

    pub fn with_density(mut self, density: Density) -> Self {
        self.density = Some(density);
        self
    }

    /// `(λ, mass)` pairs of the discretized measure: atoms followed by density nodes.
    pub fn discrete(&self) -> Vec<(f64, f64)> {
        let mut out = self.atoms.clone();
        if let Some(d) = &self.density {
            out.extend(d.nodes.iter().copied().zip(d.quad_weights.iter().copied()));
        }
        out
    }

    /// `∫ f dν` over the discretized measure.
    pub fn integrate<F: Fn(f64) -> f64 + Sync>(&self, f: F) -> f64 {
        let atoms: f64 = self.atoms.iter().map(|&(l, w)| w * f(l)).sum();
        let dens: f64 = match &self.density {
            Some(d) => d
                .nodes
                .par_iter()
                .zip(&d.quad_weights)
                .map(|(&l, &q)| if q == 0.0 { 0.0 } else { q * f(l) })
                .collect::<Vec<f64>>()
                .iter()
                .sum(),
            None => 0.0,
        };
        atoms + dens
    }

    /// Evaluates the integrability condition on the representation.
    pub fn check_admissible(&self, condition: Condition) -> AdmissibilityReport {
        let f = |l: f64| match condition {
            Condition::Nu1 => 1.0 / (1.0 + l.sqrt()),
            Condition::Nu2 => 1.0,
        };
        let value = self.integrate(f);
        if !value.is_finite() {
            return AdmissibilityReport {
                status: Admissibility::NotAdmissible,
                value,
            };
        }
        if let Some(d) = &self.density {
            let n = d.nodes.len();
            // contribution per unit of ln λ at the window ends
            let edge = [0, n - 1]
                .iter()
                .map(|&i| d.nodes[i] * d.values[i] * f(d.nodes[i]))
                .fold(0.0, f64::max);
            if d.failed.iter().any(|&b| b) || edge > 1e-2 * value.max(f64::MIN_POSITIVE) {
                return AdmissibilityReport {
                    status: Admissibility::Indeterminate,
                    value,
                };
            }
        }
        AdmissibilityReport {
            status: Admissibility::Admissible,
            value,
        }
    }

    fn require(&self, condition: Condition) -> Result<()> {
        let r = self.check_admissible(condition);
        match r.status {
            Admissibility::NotAdmissible => Err(Error::NotAdmissible {
                condition: condition.name(),
                value: r.value,
            }),
            _ => Ok(()),
        }
    }

    /// Parses the JSON measure format
    /// `{"atoms": [[lam, weight], ...], "density": {"kind": "arctan" | "table", "nodes": [...], "weights": [...]}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: MeasureSpec = serde_json::from_str(text).map_err(|e| Error::InvalidMeasure(e.to_string()))?;
        spec.build()
    }

    pub fn to_json(&self) -> String {
        let spec = MeasureSpec {
            atoms: self.atoms.iter().map(|&(l, w)| [l, w]).collect(),
            density: self.density.as_ref().map(|d| DensitySpec {
                kind: d.kind,
                nodes: Some(d.nodes.clone()),
                weights: Some(d.values.clone()),
            }),
        };
        serde_json::to_string(&spec).expect("measure serializes")
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasureSpec {
    #[serde(default)]
    atoms: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    density: Option<DensitySpec>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DensitySpec {
    kind: DensityKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<Vec<f64>>,
}

impl MeasureSpec {
    fn build(self) -> Result<MeasureRep> {
        let m = MeasureRep::from_atoms(self.atoms.iter().map(|a| (a[0], a[1])).collect())?;
        let Some(d) = self.density else {
            return Ok(m);
        };
        let density = match d.kind {
            DensityKind::Table => {
                let nodes = d
                    .nodes
                    .ok_or_else(|| Error::InvalidMeasure("table density needs \"nodes\"".into()))?;
                let weights = d
                    .weights
                    .ok_or_else(|| Error::InvalidMeasure("table density needs \"weights\"".into()))?;
                Density::from_table(nodes, weights)?
            }
            DensityKind::Arctan => match d.nodes {
                Some(nodes) => arctan_density_on(nodes)?,
                None => arctan_density(&ArctanConfig::default())?,
            },
        };
        Ok(m.with_density(density))
    }
}

/// Node window and refinement policy for the arctan density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArctanConfig {
    pub lam_min: f64,
    pub lam_max: f64,
    pub initial_nodes: usize,
    pub max_nodes: usize,
    /// Refinement stops once the total mass changes by less than this.
    pub mass_tol: f64,
}

impl Default for ArctanConfig {
    fn default() -> Self {
        ArctanConfig {
            lam_min: 1e-4,
            lam_max: 1e4,
            initial_nodes: 129,
            max_nodes: 16_385,
            mass_tol: 1e-8,
        }
    }
}

/// `(sin y)/y − cos y`, with its Taylor series for small `y`.
fn sinc_minus_cos(y: f64) -> f64 {
    if y.abs() < 0.1 {
        let y2 = y * y;
        y2 * (1.0 / 3.0 - y2 * (1.0 / 30.0 - y2 * (1.0 / 840.0 - y2 * (1.0 / 45_360.0 - y2 / 3_991_680.0))))
    } else {
        y.sin() / y - y.cos()
    }
}

/// Density of the measure that turns `sgn(x)e^{-πλx²}` into
/// `arctan(1/x) − x/(1+x²)` (for `x > 0`):
///
/// ```text
/// w(λ) = ∫_0^∞ t/(2√(πλ³)) e^{-t²/(4λ)} {sin(√π t)/t − √π cos(√π t)} dt
/// ```
///
/// computed by adaptive quadrature with panel breaks at every period of the
/// oscillation, up to where the envelope `e^{-t²/(4λ)}` drops below `1e-18`.
pub fn arctan_weight(lam: f64) -> Result<QuadResult> {
    let lam = crate::error::require_positive("lam", lam)?;
    let sp = PI.sqrt();
    let t_max = (4.0 * lam * 18.0 * std::f64::consts::LN_10).sqrt();
    let period = 2.0 * sp;
    let panels = (t_max / period).ceil().max(1.0) as usize;
    let pts: Vec<f64> = (0..=panels).map(|k| t_max * k as f64 / panels as f64).collect();
    let pref = 1.0 / (2.0 * (PI * lam * lam * lam).sqrt());
    Adaptive::new(1e-18).rel_tol(1e-11).max_panels(50_000).integrate_over(
        |t| {
            let y = sp * t;
            pref * t * (-t * t / (4.0 * lam)).exp() * sp * sinc_minus_cos(y)
        },
        &pts,
    )
}

fn arctan_values(nodes: &[f64]) -> (Vec<f64>, Vec<bool>) {
    nodes
        .par_iter()
        .map(|&l| match arctan_weight(l) {
            Ok(r) => (r.value, false),
            Err(Error::NoConvergence { value, .. }) => (value, true),
            Err(_) => (f64::NAN, true),
        })
        .unzip()
}

fn arctan_density_on(nodes: Vec<f64>) -> Result<Density> {
    let (values, failed) = arctan_values(&nodes);
    let mut d = Density::from_table(nodes, values.iter().map(|v| v.max(0.0)).collect())?;
    d.kind = DensityKind::Arctan;
    d.failed = failed;
    d.values = values;
    Ok(d)
}

fn log_nodes(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|k| (a + (b - a) * k as f64 / (n - 1) as f64).exp())
        .collect()
}

/// Builds the arctan density on log-spaced nodes, doubling the resolution
/// until the total mass is stable to `config.mass_tol`.
pub fn arctan_density(config: &ArctanConfig) -> Result<Density> {
    let mut n = config.initial_nodes.max(3);
    let mut density = arctan_density_on(log_nodes(config.lam_min, config.lam_max, n))?;
    let mut mass: f64 = density.quad_weights.iter().sum();
    while 2 * n - 1 <= config.max_nodes {
        n = 2 * n - 1;
        let finer = arctan_density_on(log_nodes(config.lam_min, config.lam_max, n))?;
        let finer_mass: f64 = finer.quad_weights.iter().sum();
        density = finer;
        let change = (finer_mass - mass).abs();
        mass = finer_mass;
        if change < config.mass_tol {
            break;
        }
    }
    Ok(density)
}

/// The measure of the arctan example with the default node window.
pub fn arctan_measure() -> Result<MeasureRep> {
    Ok(MeasureRep::default().with_density(arctan_density(&ArctanConfig::default())?))
}

/// `arctan(1/x) − x/(1+x²)` for `x > 0`, extended oddly.
pub fn arctan_target(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let ax = x.abs();
    ((1.0 / ax).atan() - ax / (1.0 + ax * ax)).copysign(x)
}

/// The function `g` of a measure together with its integrated extremals.
#[derive(Debug, Clone)]
pub struct IntegratedTarget {
    measure: MeasureRep,
    parity: Parity,
    series: Vec<(Series, f64)>,
}

impl IntegratedTarget {
    pub fn new(measure: MeasureRep, parity: Parity) -> Self {
        let series = measure
            .discrete()
            .into_par_iter()
            .filter(|(_, w)| *w != 0.0)
            .map(|(l, w)| (Series::new(l), w))
            .collect();
        IntegratedTarget {
            measure,
            parity,
            series,
        }
    }

    pub fn measure(&self) -> &MeasureRep {
        &self.measure
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// `g(x) = x⁺⁰ ∫ e^{-πλx²} dν` (or `sgn(x) ∫ …` for the odd target).
    pub fn eval_g(&self, x: f64) -> f64 {
        self.series
            .iter()
            .map(|(s, w)| w * extremal::target(self.parity, s.lam(), x))
            .sum()
    }

    fn eval_unchecked(&self, kind: Kind, x: f64) -> f64 {
        self.series.iter().map(|(s, w)| w * s.eval(kind, self.parity, x)).sum()
    }

    /// `∫ F_λ(x) dν(λ)` for the extremal `F` of the given kind.
    pub fn eval(&self, kind: Kind, x: f64) -> Result<f64> {
        self.measure.require(Condition::for_kind(kind))?;
        Ok(self.eval_unchecked(kind, x))
    }

    /// `∫|g − F|` by quadrature, independent of the closed-form errors.
    pub fn l1_error_numeric(&self, kind: Kind, tol: f64) -> Result<QuadResult> {
        self.measure.require(Condition::for_kind(kind))?;
        let lam_min = self.series.iter().map(|(s, _)| s.lam()).fold(f64::INFINITY, f64::min);
        if !lam_min.is_finite() {
            return Ok(QuadResult {
                value: 0.0,
                abs_error_estimate: 0.0,
                evaluations: 1,
            });
        }
        let w = ((1e3 / tol).ln() / (PI * lam_min)).sqrt().max(30.0).ceil();
        let k = w as i64;
        let parity = self.parity;
        let envelope = |x: f64| -> f64 { self.series.iter().map(|(s, wt)| wt * s.envelope(kind, parity, x)).sum() };
        let carrier = match kind {
            Kind::BestApprox => Carrier::AbsSine,
            _ => Carrier::SineSquared,
        };
        let opts = L1Options::new(tol, w)
            .breakpoints((-k..=k).map(|j| j as f64).collect())
            .far_field(FarField {
                carrier,
                delta: 1.0,
                envelope: &envelope,
            });
        quadrature::l1_distance(|x| self.eval_g(x), |x| self.eval_unchecked(kind, x), &opts)
    }
}

/// Free-function form of [`IntegratedTarget::eval_g`].
pub fn eval_g(t: &IntegratedTarget, x: f64) -> f64 {
    t.eval_g(x)
}

/// Free-function form of [`IntegratedTarget::eval`].
pub fn eval_integrated(kind: Kind, t: &IntegratedTarget, x: f64) -> Result<f64> {
    t.eval(kind, x)
}

/// Per-`λ` minimal error for the truncated problem.
fn truncated_error(kind: Kind, lam: f64) -> Result<f64> {
    Ok(match kind {
        Kind::BestApprox => quadrature::h_lambda(lam)?,
        Kind::Minorant => -0.5 * theta3(0.0, lam)? + 0.5 + 0.5 / lam.sqrt(),
        Kind::Majorant => 0.5 * theta3(0.0, lam)? + 0.5 - 0.5 / lam.sqrt(),
    })
}

/// `∫ E_kind(λ) dν(λ)`: the minimal L¹ error of the integrated problem.
pub fn integrated_error(kind: Kind, m: &MeasureRep) -> Result<f64> {
    integrated_error_with_parity(kind, Parity::Truncated, m)
}

/// As [`integrated_error`], for either parity. For the odd problem the
/// one-sided errors add up to the total mass and the best error is `2∫H dν`.
pub fn integrated_error_with_parity(kind: Kind, parity: Parity, m: &MeasureRep) -> Result<f64> {
    m.require(Condition::for_kind(kind))?;
    let per_lam = |lam: f64| -> Result<f64> {
        match (parity, kind) {
            (Parity::Truncated, k) => truncated_error(k, lam),
            (Parity::Odd, Kind::BestApprox) => Ok(2.0 * quadrature::h_lambda(lam)?),
            (Parity::Odd, _) => Ok(1.0),
        }
    };
    let discrete = m.discrete();
    let values: Vec<f64> = discrete.par_iter().map(|&(l, _)| per_lam(l)).collect::<Result<_>>()?;
    Ok(discrete.iter().zip(values).map(|((_, w), v)| w * v).sum())
}

/// `Σ_{n≥1} |G′_λ(n)|`, the quantity whose growth in `λ` controls the
/// interchange of summation and integration for the integrated extremals.
pub fn derivative_sample_sum(lam: f64) -> Result<f64> {
    let lam = crate::error::require_positive("lam", lam)?;
    let n_max = (41.5 / (PI * lam)).sqrt().ceil() as i64 + 1;
    Ok((1..=n_max)
        .map(|n| crate::special::gaussian_prime(lam, n as f64).abs())
        .sum())
}

/// The two bounds on [`derivative_sample_sum`]: a small-`λ` bound
/// `λ^{1/2}/4 + (1/2 + π)λ^{1/2}(θ₃(0,iλ) − 1)/2` and the large-`λ` bound
/// `λ^{-1/2} · 2π C π²/6` with `C = (3/(2π))^{3/2} e^{-3/2}`.
pub fn derivative_sample_bounds(lam: f64) -> Result<(f64, f64)> {
    let lam = crate::error::require_positive("lam", lam)?;
    let t3 = Theta::new(lam)?.theta3(0.0);
    let small = lam.sqrt() / 4.0 + (0.5 + PI) * lam.sqrt() * (t3 - 1.0) / 2.0;
    let c = (3.0 / (2.0 * PI)).powf(1.5) * (-1.5f64).exp();
    let large = c * 2.0 * PI * PI * PI / 6.0 / lam.sqrt();
    Ok((small, large))
}
