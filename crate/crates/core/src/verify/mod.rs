//! Numerical certification of the inequalities and identities behind the
//! extremal functions.
//!
//! Every check evaluates one claim on a deterministic grid and reports the
//! largest violation found. A check passes when that violation does not exceed
//! the check's tolerance. Tolerances live in the registry table below; checks
//! that combine claims with different tolerances report violations normalized
//! by their own tolerance, and are registered with tolerance `1`.
//!
//! Strict inequalities `a < b` are tested as `a − b ≤ −1e-12`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod analysis;
mod auxiliary;
mod extremal_checks;
mod measure_checks;

/// Grid sizes and parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    /// Coarse grids and `λ = 1` only.
    Fast,
    /// The full grids and parameter sets.
    Full,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Profile::Fast),
            "full" => Ok(Profile::Full),
            other => Err(Error::UnknownCheck(format!("profile {other}"))),
        }
    }
}

/// Overrides applied to a check run.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckConfig {
    pub profile: Profile,
    /// Replaces the check's parameter set when given.
    pub lams: Option<Vec<f64>>,
    /// Replaces the number of points of the check's main grid when given.
    pub grid_points: Option<usize>,
    /// Constant added to the best approximation before it is checked. Any
    /// nonzero value should make the checks that involve it fail.
    pub perturbation: f64,
}

impl CheckConfig {
    pub fn new(profile: Profile) -> Self {
        CheckConfig {
            profile,
            lams: None,
            grid_points: None,
            perturbation: 0.0,
        }
    }

    pub fn fast() -> Self {
        Self::new(Profile::Fast)
    }

    pub fn full() -> Self {
        Self::new(Profile::Full)
    }

    pub fn with_lams(mut self, lams: Vec<f64>) -> Self {
        self.lams = Some(lams);
        self
    }

    pub fn with_grid_points(mut self, n: usize) -> Self {
        self.grid_points = Some(n);
        self
    }

    pub fn with_perturbation(mut self, offset: f64) -> Self {
        self.perturbation = offset;
        self
    }

    /// The parameter set of a check whose full set is `full`.
    pub(crate) fn lams(&self, full: &[f64]) -> Vec<f64> {
        match (&self.lams, self.profile) {
            (Some(l), _) => l.clone(),
            (None, Profile::Full) => full.to_vec(),
            (None, Profile::Fast) => vec![1.0],
        }
    }

    /// Number of points of a check's main grid.
    pub(crate) fn points(&self, full: usize, fast: usize) -> usize {
        self.grid_points.unwrap_or(match self.profile {
            Profile::Full => full,
            Profile::Fast => fast,
        })
    }
}

/// Outcome of one check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// The claim being checked.
    pub anchor: String,
    pub max_violation: f64,
    pub tolerance: f64,
    /// Description of the grid and parameter set.
    pub grid: String,
    pub passed: bool,
    /// Where the largest violation occurred, or the error that stopped the check.
    pub worst_point: String,
}

/// Largest violation seen so far and where it happened.
pub(crate) struct Violations {
    max: f64,
    at: String,
    seen: bool,
}

impl Violations {
    pub(crate) fn new() -> Self {
        Violations {
            max: f64::NEG_INFINITY,
            at: String::new(),
            seen: false,
        }
    }

    /// Records a violation; NaN counts as an infinite one.
    pub(crate) fn record(&mut self, v: f64, at: impl FnOnce() -> String) {
        let v = if v.is_nan() { f64::INFINITY } else { v };
        if !self.seen || v > self.max {
            self.seen = true;
            self.max = v;
            self.at = at();
        }
    }

    /// Records `excess / tol` for a claim `excess ≤ tol`.
    pub(crate) fn bound(&mut self, excess: f64, tol: f64, at: impl FnOnce() -> String) {
        self.record(excess / tol, at);
    }

    /// Records a strict claim `excess < 0` on the normalized scale, where
    /// `1` corresponds to `excess = −margin`.
    pub(crate) fn strict(&mut self, excess: f64, margin: f64, at: impl FnOnce() -> String) {
        self.record(2.0 + excess / margin, at);
    }
}

pub(crate) struct Measured {
    pub(crate) violations: Violations,
    pub(crate) grid: String,
}

type Body = fn(&CheckConfig) -> Result<Measured>;

/// A registered check.
pub struct CheckInfo {
    pub id: &'static str,
    pub anchor: &'static str,
    pub tolerance: f64,
    body: Body,
}

/// Margin for strict inequalities.
pub(crate) const STRICT_MARGIN: f64 = 1e-12;

macro_rules! registry {
    ($( $id:literal, $anchor:literal, $tol:expr, $body:path; )*) => {
        static REGISTRY: &[CheckInfo] = &[
            $( CheckInfo { id: $id, anchor: $anchor, tolerance: $tol, body: $body }, )*
        ];
    };
}

registry! {
    "sign_condition_truncated", "sin(πx)(G⁺ − K⁺)(x) ≥ 0 for all real x", 1e-10, extremal_checks::sign_condition_truncated;
    "ba_error_closed_form", "∫|G⁺ − K⁺| equals H(λ)", 1e-6, extremal_checks::ba_error_closed_form;
    "sandwich_truncated", "L⁺ ≤ G⁺ ≤ M⁺ on the real line", 1e-10, extremal_checks::sandwich_truncated;
    "minorant_error", "∫(G⁺ − L⁺) = 1/2 + 1/(2√λ) − θ₃(0,iλ)/2", 1e-7, extremal_checks::minorant_error;
    "majorant_error", "∫(M⁺ − G⁺) = 1/2 − 1/(2√λ) + θ₃(0,iλ)/2", 1e-7, extremal_checks::majorant_error;
    "odd_sign_condition", "sin(πx)(G° − K°)(x) ≥ 0 for the odd Gaussian", 1e-10, extremal_checks::odd_sign_condition;
    "odd_sandwich", "L° ≤ G° ≤ M° for the odd Gaussian", 1e-10, extremal_checks::odd_sandwich;
    "interpolation_best", "K⁺ interpolates G⁺ at the nonzero integers", 1e-12, extremal_checks::interpolation_best;
    "interpolation_onesided", "L⁺ and M⁺ interpolate G⁺ and its derivative at the nonzero integers (normalized: values 1e-12, derivatives 1e-7)", 1.0, extremal_checks::interpolation_onesided;
    "theta_transformations", "λ^{-1/2}θⱼ(z, i/λ) equals the corresponding Gaussian sum", 1e-12, auxiliary::theta_transformations;
    "theta1_theta2_link", "λ^{-1/2}θ₁(x, i/λ) = G_λ(x)θ₂(−iλx, iλ)", 1e-12, auxiliary::theta1_theta2_link;
    "lemma_theta2_signs", "iθ₂′(ix, iλ) > 0 on (−λ/2, 0) and θ₃′(x, iλ) ≤ 0 on [0, 1/2] (normalized)", 1.0, auxiliary::lemma_theta2_signs;
    "theta_ratio_bound", "θ₁(x, i/λ)/θ₁(0, i/λ) ≤ G_λ(x) on [0, 1/2)", 1e-12, auxiliary::theta_ratio_bound;
    "laplace_theta_negative", "∫₀^∞ e^{-2πλxt}(θ₁(t, i/λ) − θ₁(0, i/λ)G_λ(t)) dt < 0 for x > 0 (normalized strict)", 1.0, auxiliary::laplace_theta_negative;
    "sum_inequalities", "Σ(−1)^{n+1}n²e^{-tn²} ≥ 0, Σe^{-tn²}(1 − 2tn²) ≥ 1/2, Σe^{-tn²}(tn³ − n) ≥ 0", 1e-12, auxiliary::sum_inequalities;
    "dawson_bounds", "D(x) ≥ 1/(2x) for x ≥ 1 and D(x) ≥ (x² − 1)/(x(2x² − 3)) for x ≥ 2", 1e-10, auxiliary::dawson_bounds;
    "dawson_moments", "∫₀^∞ uʲe^{-u²}sin(2xu) du in terms of D(x) for j = 0, 2, 4", 1e-9, auxiliary::dawson_moments;
    "integral_representations", "double-integral representations of G_λ(w)/(z − w), G_λ(z)/(z − w) and the difference quotient", 1e-6, analysis::integral_representations;
    "truncated_theta_inequalities", "heat-equation inequalities for θ⁺ and ϑ⁺ on x < 0 and 0 ≤ x ≤ 1/2", 1e-10, auxiliary::truncated_theta_inequalities;
    "truncated_theta_identities", "θ⁺ and ϑ⁺ recombine to θ₁ and θ₃′", 1e-12, auxiliary::truncated_theta_identities;
    "growth_estimates", "|θ⁺_N(u)| ≤ 2G_λ(u − 1) for u ≤ 1 and 0 ≤ ϑ⁺_N ≤ ϑ⁺ ≤ c_λ(|u| + 1)G_λ(1 − u) for u ≤ 0 (normalized)", 1.0, auxiliary::growth_estimates;
    "ft_truncated", "closed form of the Fourier transform of G⁺ against direct quadrature", 1e-9, analysis::ft_truncated;
    "fourier_sum_identity", "Σ over half-integers of H_t(λ) equals H(λ)", 1e-6, analysis::fourier_sum_identity;
    "poisson_value", "Σ L⁺(n) = θ₃(0,iλ)/2 − 1/2 and Σ M⁺(n) = θ₃(0,iλ)/2 + 1/2", 1e-10, analysis::poisson_value;
    "h_asymptotics", "H(λ) → 1/2 as λ → 0 and √λ H(λ) → 1/2 as λ → ∞, with the bracket at λ = 10 (normalized)", 1.0, analysis::h_asymptotics;
    "h_t_bounds", "(1 − e^{-2πt²/λ})/(2π²t²) ≤ H_t(λ) ≤ 1/(π²t²)", 1e-12, analysis::h_t_bounds;
    "dilation_scaling", "the approximant of type πδ has L¹ error H(λ/δ²)/δ", 1e-6, extremal_checks::dilation_scaling;
    "summability_bounds", "Σ|G′_λ(n)| stays below its small-λ and large-λ bounds", 1e-12, measure_checks::summability_bounds;
    "measure_point_mass", "integrated quantities for a point mass reduce to the single-λ ones", 1e-12, measure_checks::measure_point_mass;
    "measure_linearity", "integrated quantities are linear over atoms", 1e-13, measure_checks::measure_linearity;
    "measure_admissibility", "admissibility integrals of simple measures", 1e-12, measure_checks::measure_admissibility;
    "arctan_example", "the arctan density integrates to arctan(1/x) − x/(1 + x²)", 1e-4, measure_checks::arctan_example;
    "integrated_sign_condition", "sin(πx)(g − k) ≥ 0 and l ≤ g ≤ m for a two-atom measure", 1e-9, measure_checks::integrated_sign_condition;
    "integrated_l1_identity", "∫|g − k| equals ∫H dν for a two-atom measure", 1e-5, measure_checks::integrated_l1_identity;
}

/// All registered checks in their canonical order.
pub fn registry() -> &'static [CheckInfo] {
    REGISTRY
}

/// Ids of all registered checks.
pub fn check_ids() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.id).collect()
}

fn run_info(info: &CheckInfo, config: &CheckConfig) -> CheckReport {
    match (info.body)(config) {
        Ok(m) => {
            let max = m.violations.max;
            CheckReport {
                id: info.id.to_string(),
                anchor: info.anchor.to_string(),
                max_violation: max,
                tolerance: info.tolerance,
                grid: m.grid,
                passed: max <= info.tolerance,
                worst_point: m.violations.at,
            }
        }
        Err(e) => CheckReport {
            id: info.id.to_string(),
            anchor: info.anchor.to_string(),
            max_violation: f64::MAX,
            tolerance: info.tolerance,
            grid: String::new(),
            passed: false,
            worst_point: format!("error: {e}"),
        },
    }
}

/// Runs one check by id.
pub fn run_check(id: &str, config: &CheckConfig) -> Result<CheckReport> {
    let info = REGISTRY
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCheck(id.to_string()))?;
    Ok(run_info(info, config))
}

/// Runs every registered check in parallel; reports come back in registry order.
pub fn run_all(profile: Profile) -> Vec<CheckReport> {
    run_all_with(&CheckConfig::new(profile))
}

/// As [`run_all`], with explicit overrides.
pub fn run_all_with(config: &CheckConfig) -> Vec<CheckReport> {
    REGISTRY.par_iter().map(|info| run_info(info, config)).collect()
}

/// `n` equally spaced points on `[a, b]`.
pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n < 2 {
        return vec![0.5 * (a + b)];
    }
    (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
}

/// `linspace` with points within `1e-3` of an integer pushed out to distance `1e-3`.
pub(crate) fn off_integer_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    linspace(a, b, n)
        .into_iter()
        .map(|x| {
            let k = x.round();
            let d = x - k;
            if d.abs() < 1e-3 {
                k + if d < 0.0 { -1e-3 } else { 1e-3 }
            } else {
                x
            }
        })
        .collect()
}

pub(crate) fn fmt_lams(lams: &[f64]) -> String {
    let parts: Vec<String> = lams.iter().map(|l| format!("{l}")).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids = check_ids();
        let n = ids.len();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn unknown_id() {
        assert!(matches!(
            run_check("no_such_check", &CheckConfig::fast()),
            Err(Error::UnknownCheck(_))
        ));
    }

    #[test]
    fn violations_track_the_worst_point() {
        let mut v = Violations::new();
        v.record(-1.0, || "a".into());
        v.record(2.0, || "b".into());
        v.record(1.0, || "c".into());
        assert_eq!(v.max, 2.0);
        assert_eq!(v.at, "b");
        v.record(f64::NAN, || "d".into());
        assert_eq!(v.max, f64::INFINITY);
        assert_eq!(v.at, "d");
    }

    #[test]
    fn strict_normalization() {
        let mut v = Violations::new();
        v.strict(-STRICT_MARGIN, STRICT_MARGIN, String::new);
        assert!((v.max - 1.0).abs() < 1e-12);
        let mut w = Violations::new();
        w.strict(0.0, STRICT_MARGIN, String::new);
        assert!(w.max > 1.0);
    }

    #[test]
    fn grid_avoids_integers() {
        let g = off_integer_grid(-8.0, 8.0, 4001);
        assert_eq!(g.len(), 4001);
        assert!(g.iter().all(|x| (x - x.round()).abs() >= 1e-3 - 1e-15));
    }
}
