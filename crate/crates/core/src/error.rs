use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input to an operation (non-square matrix, zero in a member list, ...).
    #[error("invalid input: {0}")]
    Domain(String),

    /// The request is well formed but exceeds a configured engine limit.
    #[error("capability limit: {0}")]
    Capability(String),

    /// An internal invariant failed. Always a bug in the engine.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("reference data {table}: line {line}: {msg}")]
    Reference {
        table: &'static str,
        line: usize,
        msg: String,
    },

    #[error("no reference row for N = {0}")]
    MissingRow(u64),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
