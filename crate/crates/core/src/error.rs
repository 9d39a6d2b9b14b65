//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by warpmean operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time series must contain at least one value")]
    EmptySeries,

    #[error("time series value at position {index} is not finite ({value})")]
    NonFiniteValue { index: usize, value: f64 },

    #[error("sample must contain at least one time series")]
    EmptySample,

    #[error("warping path must contain at least one point")]
    EmptyPath,

    #[error(
        "warping path of order {rows}x{cols} must start at (1, 1) and end at ({rows}, {cols}), \
         found start ({start_i}, {start_j}) and end ({end_i}, {end_j})"
    )]
    PathBoundary {
        rows: usize,
        cols: usize,
        start_i: usize,
        start_j: usize,
        end_i: usize,
        end_j: usize,
    },

    #[error("warping path step from ({from_i}, {from_j}) to ({to_i}, {to_j}) is not one of (1,0), (0,1), (1,1)")]
    PathStep {
        from_i: usize,
        from_j: usize,
        to_i: usize,
        to_j: usize,
    },

    #[error("warping path has order ({path_rows}, {path_cols}) but the series have lengths ({rows}, {cols})")]
    PathOrderMismatch {
        path_rows: usize,
        path_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("{context}: limit is {limit}, requested {actual}")]
    GuardExceeded {
        context: String,
        limit: u64,
        actual: u64,
    },

    #[error("exact mean is only computed for samples of 2 or 3 series, got {0}")]
    UnsupportedSampleSize(usize),

    #[error("reference set requires a sample of exactly 3 series, got {0}")]
    ReferenceSetSize(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("dataset '{name}' has {len} series, need at least {need}")]
    DatasetTooSmall {
        name: String,
        len: usize,
        need: usize,
    },

    #[error(
        "requested {trials} trials but dataset '{name}' has only {available} distinct tuples of size {tuple_size}"
    )]
    TooManyTrials {
        name: String,
        trials: usize,
        available: u64,
        tuple_size: usize,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
