use thiserror::Error;

use crate::series::SeriesValue;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Parameters violate a documented precondition.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("degree cap exceeded: requested {requested}, cap {cap}")]
    DegreeCap { requested: usize, cap: usize },

    /// Requested tolerance lies below the rounding floor of the summation.
    /// The best estimate is attached together with its achievable bound.
    #[error("precision floor: achievable bound {achievable:.3e} exceeds tolerance {tol:.3e}")]
    PrecisionFloor {
        achievable: f64,
        tol: f64,
        estimate: Box<SeriesValue>,
    },

    #[error("no convergence: {reason} (best estimate {estimate:.6e}, error {error:.3e})")]
    NoConvergence {
        reason: String,
        estimate: f64,
        error: f64,
    },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParams(msg.into())
    }
}
