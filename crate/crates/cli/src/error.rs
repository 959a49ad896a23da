use std::path::PathBuf;

use thiserror::Error;

use crate::config::Stage;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: malformed family file: {reason}", path.display())]
    FamilyFormat { path: PathBuf, reason: String },

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: Stage,
        #[source]
        source: rpforge_core::Error,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    /// 0 is success; see [`Stage::exit_code`] for the per-stage codes.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::FamilyFormat { .. } => Stage::Family.exit_code(),
            CliError::Stage { stage, source } => match source {
                rpforge_core::Error::Argument(_) => 2,
                rpforge_core::Error::Internal(_) => 1,
                _ => stage.exit_code(),
            },
            CliError::Internal(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }

    pub(crate) fn at(stage: Stage) -> impl FnOnce(rpforge_core::Error) -> CliError {
        move |source| CliError::Stage { stage, source }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
