//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Sphere dimension not supported by the quadrature machinery.
    #[error("unsupported dimension n = {0} (even n in {{2, 4, 6, 8}} required)")]
    UnsupportedDimension(usize),
    /// Truncation degree or rule resolution too small for the requested accuracy.
    #[error("truncation too small: {0}")]
    Truncation(String),
    /// A quadrature failed to reach its target tolerance; carries the residual.
    #[error("quadrature residual {residual:e} above tolerance {tol:e} in {context}")]
    QuadratureResidual {
        context: String,
        residual: f64,
        tol: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
