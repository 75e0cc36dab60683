use thiserror::Error;

/// Errors produced anywhere in the solver stack.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported polynomial degree {0} (supported: 0..={max})", max = crate::basis::MAX_DEGREE)]
    UnsupportedDegree(usize),

    #[error("cannot decompose a level-0 coefficient set")]
    CannotDecompose,

    #[error("cannot indicate: {0}")]
    CannotIndicate(String),

    #[error("invalid physical state: {0}")]
    InvalidState(String),

    #[error("solver failure at step {step}, t = {time}, element {element}: {reason}")]
    Solver {
        step: usize,
        time: f64,
        element: String,
        reason: String,
    },

    #[error("invalid state in element {element} at t = {time}: {reason}")]
    ElementState { element: String, time: f64, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
