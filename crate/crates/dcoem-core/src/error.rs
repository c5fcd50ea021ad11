use std::io;
use std::path::PathBuf;

use thiserror::Error;

/// Errors across the pipeline. The CLI maps these onto stable exit codes:
/// input 2, resource 3, alignment 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    /// Malformed user input (corpus lines, sidecar records, suite files).
    #[error("input error: {0}")]
    Input(String),

    /// A lexical resource is missing or malformed.
    #[error("resource error: {0}")]
    Resource(String),

    /// Hypothesis and suite shapes disagree.
    #[error("alignment error: {0}")]
    Alignment(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn alignment(msg: impl Into<String>) -> Self {
        Error::Alignment(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
