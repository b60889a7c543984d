use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("window of {requested} elements exceeds capacity {cap}")]
    Capacity { requested: u128, cap: usize },

    #[error("element {0} lies outside the window")]
    OutOfWindow(String),

    #[error("incompatible windows: {0}")]
    IncompatibleWindow(String),

    #[error("product {0} escapes the target window")]
    TruncationOverflow(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(err: &serde_json::Error, message: impl Into<String>) -> Self {
        Error::Parse {
            position: err.column(),
            message: format!("{}: {err}", message.into()),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
