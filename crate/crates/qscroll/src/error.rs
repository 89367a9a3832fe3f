use thiserror::Error;

/// Errors shared across the library. Usage errors map to CLI exit code 2,
/// build failures to exit code 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Usage(String),

    #[error("field too small: needed {needed} distinct points, only {available} available")]
    FieldTooSmall { needed: usize, available: usize },

    #[error("repeated point in condition list")]
    RepeatedPoint,

    #[error("point does not lie on the curve")]
    NotOnCurve,

    #[error("operation requires a prime field small enough to scan (got {0})")]
    Unscannable(String),

    #[error("the system of singular curves is empty; no candidate to sample")]
    EmptySingularSystem,

    #[error("no nodal curve found after {attempts} attempts ({rejected_nodes} rejected on node type, {rejected_extra} on extra singular points, {rejected_line} on line components)")]
    BuildFailed {
        attempts: usize,
        rejected_nodes: usize,
        rejected_extra: usize,
        rejected_line: usize,
    },

    #[error("ladder never reached 0; internal inconsistency")]
    LadderIncomplete,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
