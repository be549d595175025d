use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read config {path}: {source}")]
    ReadConfig { path: PathBuf, source: io::Error },

    #[error("config line {line}: {reason}")]
    Syntax { line: usize, reason: String },

    #[error("unknown config key `{0}`")]
    UnknownKey(String),

    #[error("config key `{0}` given twice")]
    DuplicateKey(String),

    #[error("{key}: {reason}")]
    Invalid { key: String, reason: String },

    #[error("experiment {experiment} requires `{key}`")]
    Missing {
        key: &'static str,
        experiment: &'static str,
    },

    #[error("{experiment}: {source}")]
    Run {
        experiment: &'static str,
        source: rabiqed_core::Error,
    },

    #[error("result table: {0}")]
    Table(String),

    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },

    #[error("encoding output: {0}")]
    Encode(String),
}

impl CliError {
    pub(crate) fn invalid(key: impl Into<String>, reason: impl Into<String>) -> Self {
        CliError::Invalid {
            key: key.into(),
            reason: reason.into(),
        }
    }

    /// 1 for anything wrong with the input, 2 for failures while running or
    /// writing.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ReadConfig { .. }
            | CliError::Syntax { .. }
            | CliError::UnknownKey(_)
            | CliError::DuplicateKey(_)
            | CliError::Invalid { .. }
            | CliError::Missing { .. } => 1,
            CliError::Run { .. } | CliError::Table(_) | CliError::Write { .. } | CliError::Encode(_) => 2,
        }
    }
}
