use crate::quadrature::Adaptive;

/// Dawson's integral `D(x) = ∫_0^x e^{u²-x²} du`.
///
/// Evaluated by adaptive quadrature of the defining integral after the
/// substitution `v = x - u`, which turns the integrand into `e^{-v(2x-v)}`.
/// For `v ≤ x` the exponent is at least `v·x`, so the integration range is
/// clipped to `v ≤ 45/x`, beyond which the remainder is below `e^{-45}/x`.
pub fn dawson(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x.is_nan() { f64::NAN } else { 0.0 };
    }
    let ax = x.abs();
    let upper = ax.min(45.0 / ax);
    let r = Adaptive::new(1e-15)
        .rel_tol(1e-14)
        .integrate_over(|v| (-v * (2.0 * ax - v)).exp(), &[0.0, upper])
        .map(|r| r.value)
        .unwrap_or_else(|e| match e {
            crate::Error::NoConvergence { value, .. } => value,
            _ => f64::NAN,
        });
    r.copysign(x)
}
