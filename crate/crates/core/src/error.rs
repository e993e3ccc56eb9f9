use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid flag: {0}")]
    InvalidFlag(String),

    #[error("graph on {n} vertices exceeds the limit of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("type mismatch: {0}")]
    TypeMismatch(String),

    #[error("size violation: {0}")]
    SizeViolation(String),

    #[error("level {requested} is too small; the minimal feasible level is {minimal}")]
    LevelTooSmall { requested: usize, minimal: usize },

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("no certificate found: {0}")]
    NotFound(String),

    #[error("invalid step graphon: {0}")]
    InvalidGraphon(String),

    #[error("json: {0}")]
    Json(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
