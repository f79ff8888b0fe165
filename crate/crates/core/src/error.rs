use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of negative value {0}")]
    NegativeSqrt(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("signature is identically zero")]
    ZeroSignature,

    #[error("negative value {value} in signature `{name}` at index {index}; only non-negative weights are supported")]
    NegativeValue {
        name: String,
        index: usize,
        value: String,
    },

    #[error("pattern mismatch: {0}")]
    PatternMismatch(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The message without the `parse error:` prefix, for nesting context.
    pub(crate) fn detail(&self) -> String {
        match self {
            Error::Parse(m) => m.clone(),
            e => e.to_string(),
        }
    }
}
