use std::process::ExitCode;

use thiserror::Error;
use toric_core::appendix::AppendixError;
use toric_core::cohomology::CohomologyError;
use toric_core::cone::ConeError;
use toric_core::io::FileError;
use toric_core::numeric::ParseRationalError;
use toric_core::polygon::PolygonError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
    /// Diagnostics already rendered in the requested format.
    #[error("minimizer did not converge")]
    NotConverged(String),
    #[error("{0}")]
    UnderResolved(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
            CliError::Parse(_) => 4,
            CliError::NotConverged(_) => 5,
            CliError::UnderResolved(_) => 6,
        })
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        match e {
            FileError::NotFound(_) | FileError::Io { .. } => CliError::Io(e.to_string()),
            FileError::Json { .. } | FileError::Rational(_) => CliError::Parse(e.to_string()),
        }
    }
}

impl From<ParseRationalError> for CliError {
    fn from(e: ParseRationalError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<PolygonError> for CliError {
    fn from(e: PolygonError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::Parse(p) => p.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<AppendixError> for CliError {
    fn from(e: AppendixError) -> Self {
        match e {
            AppendixError::UnderResolved { .. } => CliError::UnderResolved(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Polygon(p) => p.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}
