//! Acceptance criteria, one PASS/FAIL line each. Run with
//! `cargo test -p gauss-extremal --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use gauss_extremal::extremal::{Approximant, Kind, Parity};
use gauss_extremal::measures::{integrated_error, MeasureRep};
use gauss_extremal::quadrature::{fourier_sum, h_lambda};
use gauss_extremal::verify::{run_check, CheckConfig, CheckReport};

const L1_TOL: f64 = 1e-9;
const BEST_L1_TOL: f64 = 1e-6;
const ONE_SIDED_L1_TOL: f64 = 1e-7;
const ASYMPTOTIC_WINDOW: f64 = 0.01;
const FOURIER_SUM_TOL: f64 = 1e-6;
const PERTURBATION: f64 = 1e-3;

struct Outcome {
    passed: bool,
    detail: String,
}

/// `θ₃(0, iλ) = 1 + 2Σ e^{-πλn²}` summed directly.
fn theta3_series(lam: f64) -> f64 {
    let n_max = (40.0 / (PI * lam)).sqrt().ceil() as i64 + 2;
    1.0 + 2.0 * (1..=n_max).map(|n| (-PI * lam * (n * n) as f64).exp()).sum::<f64>()
}

fn check(id: &str, config: &CheckConfig) -> CheckReport {
    run_check(id, config).expect("registered check")
}

fn summarize(reports: &[CheckReport]) -> Outcome {
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed)
        .map(|r| {
            format!(
                "{} ({:.3e} > {:.1e} at {})",
                r.id, r.max_violation, r.tolerance, r.worst_point
            )
        })
        .collect();
    let worst: Vec<String> = reports
        .iter()
        .map(|r| format!("{}={:.2e}", r.id, r.max_violation))
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            worst.join(", ")
        } else {
            format!("failed: {}", failed.join("; "))
        },
    }
}

fn run_ids(ids: &[&str], config: &CheckConfig) -> Outcome {
    let reports: Vec<CheckReport> = ids.iter().map(|id| check(id, config)).collect();
    summarize(&reports)
}

fn interpolation() -> Outcome {
    let cfg = CheckConfig::full().with_lams(vec![0.25, 1.0, 4.0]);
    run_ids(&["interpolation_best", "interpolation_onesided"], &cfg)
}

fn sign_condition() -> Outcome {
    let cfg = CheckConfig::full()
        .with_lams(vec![0.25, 1.0, 4.0])
        .with_grid_points(4001);
    run_ids(&["sign_condition_truncated"], &cfg)
}

fn sandwich() -> Outcome {
    let cfg = CheckConfig::full()
        .with_lams(vec![0.25, 1.0, 4.0])
        .with_grid_points(4001);
    run_ids(&["sandwich_truncated", "odd_sandwich"], &cfg)
}

fn l1_numeric(kind: Kind) -> f64 {
    Approximant::new(kind, Parity::Truncated, 1.0)
        .and_then(|a| a.l1_error_numeric(L1_TOL))
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
}

fn l1_closed_forms() -> Outcome {
    let t3 = theta3_series(1.0);
    let h = h_lambda(1.0).unwrap_or(f64::NAN);
    let best = l1_numeric(Kind::BestApprox);
    let minorant = l1_numeric(Kind::Minorant);
    let majorant = l1_numeric(Kind::Majorant);
    let d = [
        (best - h).abs(),
        (minorant - (1.0 - 0.5 * t3)).abs(),
        (majorant - 0.5 * t3).abs(),
    ];
    Outcome {
        passed: d[0] <= BEST_L1_TOL && d[1] <= ONE_SIDED_L1_TOL && d[2] <= ONE_SIDED_L1_TOL,
        detail: format!(
            "best {best:.10} vs H(1) {h:.10} (|Δ|={:.1e}); minorant {minorant:.10} vs {:.10} (|Δ|={:.1e}); majorant {majorant:.10} vs {:.10} (|Δ|={:.1e})",
            d[0],
            1.0 - 0.5 * t3,
            d[1],
            0.5 * t3,
            d[2]
        ),
    }
}

fn asymptotics() -> Outcome {
    let small = h_lambda(1e-4).unwrap_or(f64::NAN);
    let large = 1e2 * h_lambda(1e4).unwrap_or(f64::NAN);
    let inside = |v: f64| (v - 0.5).abs() <= 0.5 * ASYMPTOTIC_WINDOW;
    Outcome {
        passed: inside(small) && inside(large),
        detail: format!("H(1e-4)={small:.6}, √λ·H(λ) at λ=1e4 = {large:.6}, window 0.5·(1 ± {ASYMPTOTIC_WINDOW})"),
    }
}

fn fourier() -> Outcome {
    let ft = check("ft_truncated", &CheckConfig::full().with_lams(vec![1.0]));
    let sum = fourier_sum(1.0, 100).map(|s| s.value).unwrap_or(f64::NAN);
    let h = h_lambda(1.0).unwrap_or(f64::NAN);
    let d = (sum - h).abs();
    Outcome {
        passed: ft.passed && d <= FOURIER_SUM_TOL,
        detail: format!(
            "transform vs quadrature max |Δ|={:.2e} (tol {:.0e}); 201-term sum {sum:.10} vs H(1) {h:.10}, |Δ|={d:.1e}",
            ft.max_violation, ft.tolerance
        ),
    }
}

fn poisson() -> Outcome {
    run_ids(&["poisson_value"], &CheckConfig::full().with_lams(vec![0.5, 1.0, 2.0]))
}

fn integral_representations() -> Outcome {
    run_ids(&["integral_representations"], &CheckConfig::full().with_lams(vec![1.0]))
}

fn auxiliary_suite() -> Outcome {
    run_ids(
        &[
            "theta_transformations",
            "theta1_theta2_link",
            "lemma_theta2_signs",
            "theta_ratio_bound",
            "laplace_theta_negative",
            "sum_inequalities",
            "dawson_bounds",
            "dawson_moments",
            "truncated_theta_inequalities",
            "truncated_theta_identities",
            "growth_estimates",
        ],
        &CheckConfig::full(),
    )
}

fn measures() -> Outcome {
    let mut o = run_ids(
        &["measure_point_mass", "measure_linearity", "arctan_example"],
        &CheckConfig::full(),
    );
    let integrated = MeasureRep::point_mass(1.0, 1.0)
        .and_then(|m| integrated_error(Kind::Minorant, &m))
        .unwrap_or(f64::NAN);
    let numeric = l1_numeric(Kind::Minorant);
    let d = (integrated - numeric).abs();
    o.passed &= d <= ONE_SIDED_L1_TOL;
    o.detail = format!(
        "{}; integrated minorant error of δ₁ {integrated:.10} vs numeric L¹ {numeric:.10} (|Δ|={d:.1e})",
        o.detail
    );
    o
}

fn negative_control() -> Outcome {
    let cfg = CheckConfig::full()
        .with_lams(vec![0.25, 1.0, 4.0])
        .with_perturbation(PERTURBATION);
    let interp = check("interpolation_best", &cfg);
    let sign = check("sign_condition_truncated", &cfg);
    Outcome {
        passed: !interp.passed && !sign.passed,
        detail: format!(
            "K⁺ + {PERTURBATION:e}: interpolation_best passed={} ({:.2e}), sign_condition_truncated passed={} ({:.2e})",
            interp.passed, interp.max_violation, sign.passed, sign.max_violation
        ),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Option<f64>);
    let criteria: [Criterion; 11] = [
        ("interpolation at the nonzero integers", interpolation, Some(5.0)),
        ("sign condition of the best approximation", sign_condition, Some(10.0)),
        ("minorant and majorant sandwich", sandwich, None),
        ("L¹ error closed forms", l1_closed_forms, Some(30.0)),
        ("asymptotics of H", asymptotics, Some(10.0)),
        ("Fourier transform and Fourier sum", fourier, None),
        ("Poisson value identity", poisson, None),
        ("integral representations", integral_representations, Some(60.0)),
        ("auxiliary inequalities", auxiliary_suite, Some(60.0)),
        ("measure integration", measures, Some(120.0)),
        ("negative control", negative_control, None),
    ];
    let mut failures = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let in_time = budget.is_none_or(|b| secs < b);
        let passed = outcome.passed && in_time;
        if !passed {
            failures += 1;
        }
        let budget_text = budget.map(|b| format!(" < {b}s")).unwrap_or_default();
        println!(
            "{} [{:>2}] {name} ({secs:.2}s{budget_text}): {}",
            if passed { "PASS" } else { "FAIL" },
            k + 1,
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
