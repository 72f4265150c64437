//! Crate-wide error type.

use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Tensor or parameter shapes do not line up.
    #[error("dimension mismatch in {op}: {lhs:?} vs {rhs:?}")]
    Dimension {
        op: &'static str,
        lhs: Vec<usize>,
        rhs: Vec<usize>,
    },

    /// An operation was called outside its contract (non-scalar loss,
    /// repeated backward, empty index, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Lookup of a categorical id outside the table.
    #[error("condition id {id} out of range (table has {len} rows)")]
    CondLookup { id: u32, len: usize },

    /// Invalid argument (unknown category label, bad flag value, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// Numeric failure (non-finite loss, zero-norm vector, ...).
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Dataset-level problem (missing image type, unknown id, ...).
    #[error("data error: {0}")]
    Data(String),

    /// Malformed input file.
    #[error("parse error in {path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    /// Corrupt or truncated binary file.
    #[error("corrupt file {path}: {msg}")]
    Corrupt { path: PathBuf, msg: String },

    /// File format version the reader does not understand.
    #[error("{path}: format version {found} not supported (reader expects {expected})")]
    Version {
        path: PathBuf,
        found: u32,
        expected: u32,
    },

    /// Requested more items than a pool provides.
    #[error("capacity exceeded: requested {requested}, pool has {available}")]
    Capacity { requested: usize, available: usize },

    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
