use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("moment diverges: {0}")]
    Divergent(String),

    #[error("quadrature did not converge: value {value:e}, error estimate {estimate:e}")]
    Quadrature { value: f64, estimate: f64 },

    #[error("Meijer-G order p+q = {order} exceeds the limit {limit}; use the quadrature bound")]
    UnsupportedOrder { order: usize, limit: usize },

    #[error("Meijer-G pole families cannot be separated by a vertical contour: {0}")]
    PoleCollision(String),

    #[error("Blahut-Arimoto did not converge in {iterations} iterations (last increment {increment:e})")]
    NonConvergence { iterations: usize, increment: f64 },

    #[error("amplitude constraint {constraint:e} cannot be met on this input grid: {reason}")]
    ConstraintInfeasible { constraint: f64, reason: String },

    #[error("fading grid point {index}: {source}")]
    GridPoint {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("csv: {0}")]
    Csv(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
