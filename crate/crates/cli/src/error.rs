use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] kuga_core::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON in {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for mathematical failures, 2 for usage and input errors, 3 for
    /// unsupported ranges.
    pub fn exit_code(&self) -> i32 {
        use kuga_core::Error as E;
        match self {
            CliError::Core(
                E::UnsupportedRank(_)
                | E::UnsupportedDimension(_)
                | E::OutOfRange(_)
                | E::Unknown(_),
            ) => 3,
            CliError::Core(E::InvalidInput(_)) => 2,
            CliError::Core(_) => 1,
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Usage(_) => 2,
            CliError::Write { .. } => 1,
        }
    }
}
