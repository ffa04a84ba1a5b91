//! File formats, corpus loading and parallel drivers around `gonet-core`.

pub mod formats;
pub mod io;
pub mod parallel;
pub mod render;
pub mod report;

use std::path::PathBuf;

use gonet_core::harness::HarnessError;
use gonet_core::metrics::MetricsError;
use gonet_core::network::NetworkError;
use gonet_core::spectral::SpectralError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
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
    #[error("{path}:{line}: {reason}")]
    Format {
        path: PathBuf,
        line: usize,
        reason: String,
    },
    #[error("{0}")]
    Validation(String),
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Harness(#[from] HarnessError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("JSON encoding failed: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit status: 1 usage/IO, 2 validation, 3 numeric.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } | Error::Csv { .. } | Error::Format { .. } | Error::Json(_) => 1,
            Error::Validation(_) | Error::Network(_) | Error::Metrics(_) => 2,
            Error::Harness(HarnessError::Spectral(_)) | Error::Spectral(_) => 3,
            Error::Harness(_) => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
