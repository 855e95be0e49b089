use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hulls overlap: {0}")]
    OverlappingHulls(String),

    #[error("sequence is not summable: {0}")]
    NotSummable(String),

    /// The defining integral or series does not converge at the requested point.
    #[error("divergent evaluation (estimated abscissa near {abscissa_hint})")]
    Divergent { abscissa_hint: f64 },

    /// Quadrature stopped before reaching the requested tolerance.
    #[error("quadrature did not converge: achieved {achieved:e}, requested {requested:e}")]
    NonConvergent { achieved: f64, requested: f64 },

    #[error("evaluation outside supported range: {0}")]
    OutOfRange(String),

    #[error("missing pole data: {0}")]
    MissingPoleData(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("spectral estimate inconclusive: {0}")]
    Inconclusive(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
