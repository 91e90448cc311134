use thiserror::Error;

/// Errors reported by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("invalid initial state: {0}")]
    InvalidState(String),

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("discarded Poisson weight {discarded:.3e} exceeds the limit {limit:.3e}; widen the sector window")]
    TruncationTooSmall { discarded: f64, limit: f64 },

    #[error("series tail bound {tail:.3e} exceeds {limit:.3e}; use more terms")]
    SeriesTail { tail: f64, limit: f64 },

    #[error("norm drift {drift:.3e} at t = {t} exceeds {limit:.3e}")]
    NormDrift { drift: f64, t: f64, limit: f64 },

    #[error("solution magnitude exceeded the overflow guard at t = {t}")]
    Overflow { t: f64 },

    #[error("tridiagonal eigensolver did not converge")]
    NoConvergence,

    #[error("quadrature did not reach the requested accuracy: estimate {estimate:.3e}, target {target:.3e}")]
    QuadratureNotConverged { estimate: f64, target: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
