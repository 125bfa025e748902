use apollonia_core::analysis::AnalysisError;
use apollonia_core::longest_path::LongestPathError;
use apollonia_core::occupancy::OccupancyError;
use apollonia_core::RanError;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("replayed output {path} differs from the manifest (expected {expected}, got {actual})")]
    ReplayMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Capacity(_) => 4,
            CliError::ReplayMismatch { .. } => 5,
            CliError::Io { .. } => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Domain(_) => "domain",
            CliError::Capacity(_) => "capacity",
            CliError::ReplayMismatch { .. } => "replay-mismatch",
            CliError::Io { .. } => "io",
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

impl From<RanError> for CliError {
    fn from(e: RanError) -> Self {
        CliError::Domain(e.to_string())
    }
}

impl From<LongestPathError> for CliError {
    fn from(e: LongestPathError) -> Self {
        match e {
            LongestPathError::TooLarge { .. } => CliError::Capacity(e.to_string()),
        }
    }
}

impl From<OccupancyError> for CliError {
    fn from(e: OccupancyError) -> Self {
        match e {
            OccupancyError::Capacity { .. } | OccupancyError::ExactTooLarge { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Overflow { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}
