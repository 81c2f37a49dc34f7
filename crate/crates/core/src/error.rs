use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by kernel construction, set functions and optimizers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid feature matrix: {0}")]
    InvalidData(String),

    #[error("row {row} has zero norm; cosine similarity is undefined")]
    ZeroNormRow { row: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid kernel: {0}")]
    InvalidKernel(String),

    #[error("k_neighbors = {k} must satisfy 1 <= k < n = {n}")]
    InvalidNeighbors { k: usize, n: usize },

    #[error("cluster count {k} must satisfy 1 <= k <= n = {n}")]
    InvalidClusterCount { k: usize, n: usize },

    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate element {0} in subset")]
    DuplicateElement(usize),

    #[error("element {0} is already in the subset")]
    AlreadySelected(usize),

    #[error("memo state does not belong to this function instance")]
    StaleMemo,

    #[error("matrix is not positive definite at pivot {pivot} (value {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("function `{0}` is not submodular; lazy evaluation requires submodularity")]
    NotSubmodular(String),

    #[error("instance too large for exhaustive search: {count} subsets exceeds {limit}")]
    TooLarge { count: u128, limit: u128 },

    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
