use std::path::PathBuf;

use pgroup_core::Error as CoreError;

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A computed value disagrees with its expectation, or a checked
    /// property fails.
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Json(_) => EXIT_USAGE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Csv(_) => EXIT_LIMIT,
            CliError::Core(e) => match e {
                CoreError::InadmissiblePrime(..)
                | CoreError::UnknownEntry(_)
                | CoreError::InvalidParameter(_)
                | CoreError::UnknownGenerator(_)
                | CoreError::GeneratorOutOfRange(..)
                | CoreError::MalformedPresentation(_)
                | CoreError::Format(_)
                | CoreError::NonMetabelianInput
                | CoreError::NonNormalSubgroup { .. }
                | CoreError::InvalidLayer(_)
                | CoreError::InvalidTopOrder { .. }
                | CoreError::NotAutomorphism(_) => EXIT_USAGE,
                _ => EXIT_LIMIT,
            },
        }
    }
}
