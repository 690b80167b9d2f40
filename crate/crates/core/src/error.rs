use thiserror::Error;

/// Errors raised by matrix builders, solvers and certifiers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Input that should be symmetric is not, beyond the tolerance.
    #[error("matrix is not symmetric (max asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An iterative solver hit its iteration cap.
    #[error("{method} did not converge after {iterations} iterations")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
    },

    /// A Gram matrix produced an eigenvalue too negative to be rounding.
    #[error("Gram matrix has eigenvalue {value:e}, not positive semidefinite")]
    Indefinite { value: f64 },

    /// The commuting-tridiagonal path could not produce certified eigenpairs.
    #[error("commuting tridiagonal fit unusable: {0}")]
    UnusableFit(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
