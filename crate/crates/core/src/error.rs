use std::path::PathBuf;

/// Errors raised while configuring, sampling or running experiments.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// A construction that needs `sign(p - q)` was asked for with `p == q`.
    #[error("degenerate direction: p and q are equal ({0})")]
    EqualProbabilities(f64),

    #[error("zero mean vector: {0} has zero norm")]
    ZeroMean(&'static str),

    #[error("attention matrix does not match the sample adjacency: {0}")]
    AdjacencyMismatch(String),

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
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
