use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid probability interval [{lower}, {upper}]")]
    InvalidInterval { lower: f64, upper: f64 },

    #[error("{}:{line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("label {label} ({name}) has no observed values in the training data")]
    UnobservedLabel { label: usize, name: String },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("exhaustive search over {abstained} abstained labels exceeds the limit of {limit}")]
    GuardExceeded { abstained: usize, limit: usize },

    #[error("experiment cell failed (dataset {dataset}, repeat {repeat}, fold {fold}): {source}")]
    Experiment {
        dataset: String,
        repeat: usize,
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }
}
