//! Command-line front end for `gauss-extremal`: evaluate approximants,
//! tabulate errors, emit plot data, run the verification suite and load
//! measure files.

use std::collections::HashSet;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gauss_extremal::extremal::{error_best, error_majorant, error_minorant, Approximant, Kind, Parity};
use gauss_extremal::measures::{integrated_error_with_parity, Condition, IntegratedTarget, MeasureRep};
use gauss_extremal::quadrature::h_profile;
use gauss_extremal::special::sin_pi;
use gauss_extremal::verify::{self, CheckConfig, CheckReport, Profile};
use serde_json::json;

pub mod table;

pub use table::{fmt_num, Table};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] gauss_extremal::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "gauss-extremal",
    version,
    about = "Extremal bandlimited approximations to truncated and odd Gaussians"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate an approximant and its target at a list or range of points.
    Eval(EvalArgs),
    /// Tabulate the optimal L¹ errors for a list of λ.
    ErrorTable(ErrorTableArgs),
    /// Write a two-column (x, y) CSV for plotting.
    PlotData(PlotArgs),
    /// Run the verification suite.
    Verify(VerifyArgs),
    /// Load a measure file and report admissibility, errors and values.
    Measure(MeasureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Best,
    Minorant,
    Majorant,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Best => Kind::BestApprox,
            KindArg::Minorant => Kind::Minorant,
            KindArg::Majorant => Kind::Majorant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Truncated,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Truncated => Parity::Truncated,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long, value_enum, default_value = "best")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "truncated")]
    pub parity: ParityArg,
    /// Gaussian parameter of the target.
    #[arg(long)]
    pub lam: f64,
    /// Dilation: the approximant has type πδ (truncated) or 2πδ (odd).
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Comma-separated evaluation points.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Evenly spaced points as `start:end:count`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "x")]
    pub range: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ErrorTableArgs {
    /// Comma-separated λ values.
    #[arg(long, allow_hyphen_values = true)]
    pub lam: String,
    /// Comma-separated error columns to include.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["best", "minorant", "majorant"])]
    pub kinds: Vec<KindArg>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Curve {
    G,
    Approximant,
    Residual,
    SignProduct,
    HProfile,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    #[arg(long, value_enum)]
    pub curve: Curve,
    #[arg(long, value_enum, default_value = "best")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "truncated")]
    pub parity: ParityArg,
    #[arg(long, default_value_t = 1.0)]
    pub lam: f64,
    #[arg(long, default_value_t = 1.0)]
    pub delta: f64,
    /// Left end of the x range, or of the λ range for `h-profile`.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    /// Number of rows.
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileArg {
    Fast,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub profile: ProfileArg,
    /// Run only these check ids (repeatable or comma-separated).
    #[arg(long = "id", value_delimiter = ',')]
    pub ids: Vec<String>,
    /// Write the JSON report to this file, or to stdout with `-`.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Add a constant to the best approximation (negative control).
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub perturb: f64,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// JSON measure file.
    pub file: PathBuf,
    #[arg(long, value_enum, default_value = "truncated")]
    pub parity: ParityArg,
    /// Comma-separated points at which to evaluate the integrated target and approximants.
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
}

/// Runs a parsed command, writing results to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::ErrorTable(a) => cmd_error_table(a, out, err),
        Command::PlotData(a) => cmd_plot_data(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Measure(a) => cmd_measure(a, out),
    }
}

pub fn parse_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("not a finite number: `{s}`")))
        })
        .collect()
}

/// Parses `start:end:count` into `count` evenly spaced points.
pub fn parse_range(text: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("malformed range `{text}`, expected start:end:count"));
    let parts: Vec<&str> = text.split(':').map(str::trim).collect();
    let [a, b, n] = parts[..] else { return Err(bad()) };
    let a: f64 = a.parse().map_err(|_| bad())?;
    let b: f64 = b.parse().map_err(|_| bad())?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if !a.is_finite() || !b.is_finite() || b < a {
        return Err(bad());
    }
    Ok(linspace(a, b, n))
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn require_positive(name: &str, x: f64) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!(
            "--{name} must be positive and finite, got {x}"
        )))
    }
}

fn write_table(t: &Table, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Csv => t.write_csv(out),
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &t.to_json())?;
            writeln!(out)?;
            Ok(())
        }
    }
}

fn approximant(kind: KindArg, parity: ParityArg, lam: f64, delta: f64) -> Result<Approximant, CliError> {
    let lam = require_positive("lam", lam)?;
    let delta = require_positive("delta", delta)?;
    Ok(Approximant::for_target(kind.into(), parity.into(), lam, delta)?)
}

fn describe(a: &Approximant) -> String {
    format!(
        "kind={} parity={} lam={} delta={}",
        a.kind().name(),
        if a.parity() == Parity::Odd { "odd" } else { "truncated" },
        a.target_lam(),
        a.delta()
    )
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let k = approximant(a.kind, a.parity, a.lam, a.delta)?;
    let xs = match (&a.x, &a.range) {
        (Some(x), _) => parse_list(x)?,
        (None, Some(r)) => parse_range(r)?,
        (None, None) => Vec::new(),
    };
    let mut t = Table::new(["x", "g", "approx", "residual"]).meta(describe(&k));
    for x in xs {
        let g = k.target(x);
        let v = k.eval(x);
        t.push(vec![x, g, v, v - g]);
    }
    write_table(&t, a.format, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_error_table(a: &ErrorTableArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8, CliError> {
    let mut seen = HashSet::new();
    let mut lams = Vec::new();
    for lam in parse_list(&a.lam)? {
        let lam = require_positive("lam", lam)?;
        if seen.insert(lam.to_bits()) {
            lams.push(lam);
        } else {
            writeln!(err, "warning: duplicate λ = {lam} ignored")?;
        }
    }
    let mut kinds: Vec<KindArg> = Vec::new();
    for &k in &a.kinds {
        if !kinds.contains(&k) {
            kinds.push(k);
        }
    }
    let mut columns = vec!["lam"];
    columns.extend(kinds.iter().map(|&k| match k {
        KindArg::Best => "H",
        KindArg::Minorant => "minorant",
        KindArg::Majorant => "majorant",
    }));
    let mut t = Table::new(columns).meta("optimal L¹ errors, truncated Gaussian, type π");
    for lam in lams {
        let mut row = vec![lam];
        for &k in &kinds {
            let e = match k {
                KindArg::Best => error_best(lam)?,
                KindArg::Minorant => error_minorant(lam)?,
                KindArg::Majorant => error_majorant(lam)?,
            };
            row.push(e.value);
        }
        t.push(row);
    }
    write_table(&t, a.format, out)?;
    Ok(EXIT_OK)
}

pub fn cmd_plot_data(a: &PlotArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let t = if a.curve == Curve::HProfile {
        let lo = require_positive("from", a.from.unwrap_or(1e-4))?;
        let hi = require_positive("to", a.to.unwrap_or(1e4))?;
        if hi < lo {
            return Err(CliError::Usage(format!("empty λ range [{lo}, {hi}]")));
        }
        let n = a.points.unwrap_or(200);
        let lams: Vec<f64> = linspace(lo.ln(), hi.ln(), n).into_iter().map(f64::exp).collect();
        let mut t = Table::new(["x", "y"]).meta(format!("curve=h-profile lam=[{lo}, {hi}] log-spaced rows={n}"));
        for p in h_profile(&lams)? {
            t.push(vec![p.lam, p.value]);
        }
        t
    } else {
        let k = approximant(a.kind, a.parity, a.lam, a.delta)?;
        let (lo, hi) = (a.from.unwrap_or(-4.0), a.to.unwrap_or(4.0));
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(CliError::Usage(format!("empty x range [{lo}, {hi}]")));
        }
        let n = a.points.unwrap_or(801);
        // the sign condition is a statement about the best approximation
        let best = approximant(KindArg::Best, a.parity, a.lam, a.delta)?;
        let curve = match a.curve {
            Curve::G => "g",
            Curve::Approximant => "approximant",
            Curve::Residual => "residual",
            Curve::SignProduct => "sign-product",
            Curve::HProfile => unreachable!(),
        };
        let used = if a.curve == Curve::SignProduct { &best } else { &k };
        let mut t = Table::new(["x", "y"]).meta(format!("curve={curve} {} rows={n}", describe(used)));
        for x in linspace(lo, hi, n) {
            let y = match a.curve {
                Curve::G => k.target(x),
                Curve::Approximant => k.eval(x),
                Curve::Residual => k.eval(x) - k.target(x),
                Curve::SignProduct => {
                    // sin(πδx) vanishes at the interpolation nodes ℤ/δ
                    sin_pi(best.delta() * x) * (best.target(x) - best.eval(x))
                }
                Curve::HProfile => unreachable!(),
            };
            t.push(vec![x, y]);
        }
        t
    };
    t.write_csv(out)?;
    Ok(EXIT_OK)
}

pub fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let known = verify::check_ids();
    for id in &a.ids {
        if !known.contains(&id.as_str()) {
            return Err(CliError::Usage(format!("unknown check id `{id}`")));
        }
    }
    let profile = match a.profile {
        ProfileArg::Fast => Profile::Fast,
        ProfileArg::Full => Profile::Full,
    };
    let cfg = CheckConfig::new(profile).with_perturbation(a.perturb);
    let reports: Vec<CheckReport> = if a.ids.is_empty() {
        verify::run_all_with(&cfg)
    } else {
        a.ids
            .iter()
            .map(|id| verify::run_check(id, &cfg))
            .collect::<Result<_, _>>()?
    };
    let failed = reports.iter().filter(|r| !r.passed).count();
    match &a.json {
        Some(path) if path.as_os_str() == "-" => {
            serde_json::to_writer_pretty(&mut *out, &reports)?;
            writeln!(out)?;
        }
        Some(path) => {
            fs::write(path, serde_json::to_string_pretty(&reports)?)?;
            print_reports(&reports, out)?;
        }
        None => print_reports(&reports, out)?,
    }
    Ok(if failed == 0 { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn print_reports(reports: &[CheckReport], out: &mut dyn Write) -> Result<(), CliError> {
    for r in reports {
        writeln!(
            out,
            "{} {:<30} max_violation={:<12.3e} tol={:.0e}  [{}]",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.max_violation,
            r.tolerance,
            r.worst_point
        )?;
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    writeln!(out, "{passed} of {} checks passed", reports.len())?;
    Ok(())
}

pub fn cmd_measure(a: &MeasureArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let text = fs::read_to_string(&a.file)?;
    let m = MeasureRep::from_json(&text)?;
    let parity: Parity = a.parity.into();
    let xs = a.x.as_deref().map(parse_list).transpose()?.unwrap_or_default();
    let nu1 = m.check_admissible(Condition::Nu1);
    let nu2 = m.check_admissible(Condition::Nu2);
    let mut errors = serde_json::Map::new();
    for kind in [Kind::BestApprox, Kind::Minorant, Kind::Majorant] {
        let v = match integrated_error_with_parity(kind, parity, &m) {
            Ok(e) => json!(e),
            Err(gauss_extremal::Error::NotAdmissible { .. }) => serde_json::Value::Null,
            Err(e) => return Err(e.into()),
        };
        errors.insert(kind.name().to_string(), v);
    }
    let t = IntegratedTarget::new(m, parity);
    let mut values = Vec::new();
    for x in xs {
        let mut row = serde_json::Map::new();
        row.insert("x".into(), json!(x));
        row.insert("g".into(), json!(t.eval_g(x)));
        for kind in [Kind::BestApprox, Kind::Minorant, Kind::Majorant] {
            let admissible = t.measure().check_admissible(Condition::for_kind(kind)).status
                != gauss_extremal::measures::Admissibility::NotAdmissible;
            let v = if admissible {
                json!(t.eval(kind, x)?)
            } else {
                serde_json::Value::Null
            };
            row.insert(kind.name().to_string(), v);
        }
        values.push(serde_json::Value::Object(row));
    }
    let report = json!({
        "parity": parity,
        "nu1": nu1,
        "nu2": nu2,
        "errors": errors,
        "values": values,
    });
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)?;
    Ok(EXIT_OK)
}
