use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Config(_) => 2,
            CliError::Verification(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<djcm::ModelError> for CliError {
    fn from(e: djcm::ModelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<djcm::OracleError> for CliError {
    fn from(e: djcm::OracleError) -> Self {
        CliError::Verification(format!("oracle: {e}"))
    }
}
