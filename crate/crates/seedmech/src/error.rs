use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Instance { path: String, message: String },
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] seedmech_core::Error),
}

impl CliError {
    pub fn instance(path: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Instance { path: path.into(), message: message.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
