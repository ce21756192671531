use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A sample or result was NaN or infinite.
    #[error("non-finite value in {0}")]
    NonFinite(String),
    /// A grid does not cover the region where the integrand is significant.
    #[error("insufficient coverage: estimated tail {tail:e} exceeds {limit:e}")]
    Coverage { tail: f64, limit: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(value: crate::C64, what: &str) -> Result<crate::C64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}
