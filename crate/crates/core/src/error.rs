//! Error type shared by every stage of the pipeline.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{line}:{column}: syntax error: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported bounds: {0}")]
    UnsupportedBounds(String),
    #[error("unsupported construct: {0}")]
    Unsupported(String),
    #[error("unsafe variable {variable} in `{statement}`")]
    Unsafe { variable: String, statement: String },
    #[error("evaluation error: {0}")]
    Eval(String),
    #[error("resource cap exceeded: {0}")]
    TooLarge(String),
    #[error("invalid arguments: {0}")]
    Args(String),
}

impl Error {
    /// Stable diagnostic code, e.g. `E_UNSAFE`.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "E_SYNTAX",
            Error::UnsupportedBounds(_) => "E_UNSUPPORTED_BOUNDS",
            Error::Unsupported(_) => "E_UNSUPPORTED",
            Error::Unsafe { .. } => "E_UNSAFE",
            Error::Eval(_) => "E_EVAL",
            Error::TooLarge(_) => "E_TOO_LARGE",
            Error::Args(_) => "E_ARGS",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
