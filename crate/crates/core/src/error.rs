use thiserror::Error;

/// Errors raised by evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the function (pole, branch cut, bad sector).
    #[error("domain error: {0}")]
    Domain(String),
    /// Index or argument outside the range supported by a table or series.
    #[error("range error: {0}")]
    Range(String),
    /// A quadrature or series could not reach its tolerance.
    #[error("accuracy error: {reason} (estimated error {est_error:e})")]
    Accuracy { reason: String, est_error: f64 },
    /// An iterative solver failed (no sign change, no convergence).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
