use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Core(#[from] prethermal::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("config: {0}")]
    Config(String),

    #[error("unknown observable `{0}`")]
    UnknownObservable(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}: {message}")]
    Csv { path: PathBuf, message: String },
}

impl HarnessError {
    /// Short machine-readable tag for the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            HarnessError::Core(_) => "core",
            HarnessError::Io { .. } => "io",
            HarnessError::Config(_) => "config",
            HarnessError::UnknownObservable(_) => "observable",
            HarnessError::Json(_) => "json",
            HarnessError::Csv { .. } => "csv",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
