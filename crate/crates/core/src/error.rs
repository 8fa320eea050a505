use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series has (near) zero variance and cannot be z-normalized")]
    ConstantSeries,

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("size mismatch in {what}: expected {expected}, found {actual}")]
    SizeMismatch {
        what: String,
        expected: u64,
        actual: u64,
    },

    #[error("malformed metadata {path:?}: {reason}")]
    MalformedMeta { path: PathBuf, reason: String },

    #[error("segment count {l} is invalid for series length {m}")]
    BadSegmentCount { l: usize, m: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid bit budget: {0}")]
    BadBits(String),

    #[error("embedding is constant; it cannot be scaled into a DEA")]
    DegenerateEmbedding,

    #[error("DFT coefficient budget {l} is invalid for series length {m} (must be even and <= m)")]
    BadBudget { l: usize, m: usize },

    #[error("sample size {n_prime} is invalid for a dataset of {n} series")]
    BadSampleSize { n_prime: usize, n: usize },

    #[error("index is empty")]
    EmptyTree,

    #[error("operation requires a lower-bounding (PAA) summarization")]
    UnsupportedSummarization,

    #[error("k = {k} is invalid for a base set of {n} series")]
    BadK { k: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}
