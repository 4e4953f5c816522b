use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the region where the quantity is defined.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// The request exceeds a configured memory or time budget.
    #[error("resource limit in {op}: {reason}")]
    Resource {
        op: &'static str,
        reason: String,
        /// Estimated size of the request, when one is available.
        estimate: Option<f64>,
    },

    /// Malformed input data (e.g. a zero table).
    #[error("format error at line {line}: {reason}")]
    Format { line: usize, reason: String },

    /// A zero table does not reach the requested truncation height.
    #[error("zero table covers heights up to {covered}, but T = {requested} was requested")]
    Coverage { requested: f64, covered: f64 },

    /// An iteration or quadrature failed to converge.
    #[error("numerical failure in {op}: {reason}")]
    Numeric { op: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Error {
    Error::Domain {
        op,
        reason: reason.into(),
    }
}

pub(crate) fn numeric(op: &'static str, reason: impl Into<String>) -> Error {
    Error::Numeric {
        op,
        reason: reason.into(),
    }
}

pub(crate) fn check_finite(op: &'static str, name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(domain(op, format!("{name} must be finite, got {v}")))
    }
}
