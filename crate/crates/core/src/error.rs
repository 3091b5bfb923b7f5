use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library. Variants map onto the CLI exit-code
/// contract: `Usage` → 2, `Invariant` → 3, `Data` → 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported type label: {0}")]
    UnsupportedType(String),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("data file {path}: {msg}")]
    Data { path: PathBuf, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn data(path: impl Into<PathBuf>, msg: impl Into<String>) -> Self {
        Error::Data {
            path: path.into(),
            msg: msg.into(),
        }
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    /// Exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::UnsupportedType(_) | Error::Usage(_) | Error::Precondition(_) => 2,
            Error::Invariant(_) => 3,
            Error::Data { .. } | Error::Io { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
