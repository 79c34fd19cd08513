use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A guarded computation would exceed its state or subset budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Inputs are individually valid but do not agree with each other
    /// (a tree over the wrong vertex set, a seed outside the graph, ...).
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    #[error("format error on line {line}: {message}")]
    Format { line: usize, message: String },
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn format(line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            line,
            message: message.into(),
        }
    }
}
