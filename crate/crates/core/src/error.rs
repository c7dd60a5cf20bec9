use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid dataset: {0}")]
    InvalidDataset(String),

    #[error("invalid knot set: {0}")]
    InvalidKnots(String),

    #[error("at least {required} internal knots are needed, got {got}")]
    InsufficientKnots { required: usize, got: usize },

    #[error("polynomial degree {degree} exceeds the supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },

    #[error("argument {0} lies outside the unit interval")]
    Domain(f64),

    #[error("at least {required} curves are needed, got {got}")]
    TooFewCurves { required: usize, got: usize },

    #[error("no admissible split candidate remains")]
    Saturated,

    #[error("trajectory of length {0} is too short (need at least 3 points)")]
    TooShort(usize),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("value out of range: {0}")]
    Range(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("resolution error: {0}")]
    Resolution(String),

    #[error("matrix is not positive semidefinite (diagonal jitter up to {jitter:e} failed)")]
    NotPsd { jitter: f64 },

    #[error("eigenvalue iteration did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by user input or configuration rather than numerics.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::Json(_)
                | Error::Csv(_)
                | Error::Io(_)
                | Error::InvalidGrid(_)
                | Error::InvalidDataset(_)
                | Error::InvalidKnots(_)
                | Error::InsufficientKnots { .. }
                | Error::Unsupported(_)
                | Error::Range(_)
                | Error::TooFewCurves { .. }
        )
    }
}
