use std::io;

use thiserror::Error;

/// Errors produced by parsing, validation and sampling.
#[derive(Debug, Error)]
pub enum Error {
    /// A sampler or query parameter is out of its valid range.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Malformed input data, with a 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    /// A query, region or subgraph request named an object that does not exist.
    #[error("unknown object id: {0}")]
    UnknownId(String),

    /// Structurally valid input that violates a contract (empty population,
    /// sample larger than original, ...).
    #[error("{0}")]
    InvalidInput(String),

    /// An operation that only supports 2-dimensional data was given
    /// something else.
    #[error("unsupported dimension: {0} (expected 2)")]
    UnsupportedDimension(usize),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn parse(line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
