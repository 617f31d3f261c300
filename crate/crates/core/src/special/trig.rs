use std::f64::consts::PI;

/// `sin(πx)` with exact argument reduction, so integers give exact zeros.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    let n = (2.0 * x).round();
    let r = x - 0.5 * n;
    let s = (PI * r).sin();
    let c = (PI * r).cos();
    match (n as i64).rem_euclid(4) {
        0 => s,
        1 => c,
        2 => -s,
        _ => -c,
    }
}

/// `cos(πx)` with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// Normalized sinc `sin(πw)/(πw)`, equal to 1 at `w = 0`.
///
/// Below `|w| < 1e-4` the Taylor polynomial is used; its truncation error
/// there is below `(πw)^6/5040 < 2e-27`.
pub fn sinc(w: f64) -> f64 {
    if w.abs() < 1e-4 {
        let p = PI * w;
        let p2 = p * p;
        1.0 - p2 / 6.0 + p2 * p2 / 120.0
    } else {
        sin_pi(w) / (PI * w)
    }
}
