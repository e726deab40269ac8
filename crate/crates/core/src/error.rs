//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Input violates a documented precondition (non-finite entries, wrong
    /// dimensions for the operation, out-of-range parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An iterative numerical routine failed to converge or diverged.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Matrices that must agree in shape do not.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A data file could not be parsed.
    #[error("parse error in {path}, line {line}: {detail}")]
    ParseError {
        path: String,
        line: usize,
        detail: String,
    },

    /// A file referenced by a manifest does not exist.
    #[error("missing file for view '{view}': {path}")]
    MissingFile { view: String, path: String },

    /// A configuration value is invalid or inconsistent.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// A sample column has (near-)zero norm and cannot be used as a
    /// regression target.
    #[error("degenerate sample {sample} in view '{view}': squared norm {norm_sq:.3e} below threshold")]
    DegenerateSample {
        view: String,
        sample: usize,
        norm_sq: f64,
    },

    /// Two label vectors that must have equal length do not.
    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    /// An aggregation was requested over an empty collection.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// Ground-truth labels are required but absent.
    #[error("missing labels: {0}")]
    MissingLabels(String),

    /// An unrecognized hyperparameter preset name.
    #[error("unknown preset '{name}'; available presets: {available}")]
    UnknownPreset { name: String, available: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
