use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILED: i32 = 1;
    pub const BAD_INPUT: i32 = 2;
    pub const IO: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] weylhom::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(weylhom::Error::BasisMismatch { .. }) => exit::VERIFICATION_FAILED,
            CliError::Core(_) | CliError::Usage(_) => exit::BAD_INPUT,
            CliError::Io { .. } | CliError::Csv { .. } => exit::IO,
        }
    }
}

impl From<weylhom::ArithError> for CliError {
    fn from(e: weylhom::ArithError) -> Self {
        CliError::Core(e.into())
    }
}
