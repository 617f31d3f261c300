use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {name} = {value} ({reason})")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// Adaptive quadrature ran out of panels before meeting its tolerance.
    #[error(
        "quadrature did not converge: best estimate {value:e}, error estimate {error_estimate:e} \
         after {evaluations} evaluations"
    )]
    NoConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    /// A measure does not satisfy the integrability condition required by an operation.
    #[error("measure is not admissible: condition {condition} evaluated to {value}")]
    NotAdmissible { condition: &'static str, value: f64 },

    /// A measure description is malformed.
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    /// A verification check id that is not registered.
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}
