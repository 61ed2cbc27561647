use thiserror::Error;

/// Errors produced by the library.
///
/// Domain errors (violated preconditions, exhausted budgets, failed
/// construction self-checks) are kept apart from parse errors so callers can
/// map them to different exit codes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {needed} tests required, budget is {budget}")]
    Budget { needed: u128, budget: u128 },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// True for parse and I/O failures, false for domain errors.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
