use thiserror::Error;

/// Errors raised by the model and its front ends.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index mismatch: expected dimension {expected}, got {found}")]
    IndexMismatch { expected: usize, found: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid space: {0}")]
    InvalidSpace(String),

    #[error("generator set does not span coordinate {0}; the polar is unbounded")]
    NotSpanning(usize),

    #[error("size guard `{guard}` exceeded: {size} > {limit}")]
    SizeGuard { guard: &'static str, size: usize, limit: usize },

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid rational `{0}`")]
    BadRational(String),

    #[error("degree cap mismatch: {0}")]
    CapMismatch(String),

    #[error("level {level} is below the degree cap {cap}")]
    LevelBelowCap { level: usize, cap: usize },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("unbound atom `{0}`")]
    UnboundAtom(String),

    #[error("ill-formed proof at {node}: {reason}")]
    IllFormed { node: String, reason: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
