use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),

    #[error("{0}")]
    Parameters(String),

    #[error("numerical failure: {0}")]
    Numerical(#[from] solscat::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed table: {0}")]
    Parse(String),

    #[error("config file {path}, line {line}: {reason}")]
    Config { path: PathBuf, line: usize, reason: String },
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Usage problems exit with 2, everything else with 3; 1 is reserved for
    /// failed checks.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Parameters(_) | CliError::Config { .. } => 2,
            _ => 3,
        }
    }
}
