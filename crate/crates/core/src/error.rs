use thiserror::Error;

/// Errors raised by matrix construction, minor enumeration and analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have dimension at least 1")]
    EmptyMatrix,

    #[error("expected {expected} entries for a {n}x{n} matrix, got {got}")]
    EntryCount { n: usize, expected: usize, got: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("index set is not strictly increasing: {0:?}")]
    UnsortedIndexSet(Vec<usize>),

    #[error("the empty index set is not allowed here")]
    EmptyIndexSet,

    #[error("row set has {rows} indices but column set has {cols}")]
    MinorShape { rows: usize, cols: usize },

    #[error("compound order {order} out of range 1..={n}")]
    OrderOutOfRange { order: usize, n: usize },

    #[error("{what} refuses dimension {n} (limit {limit}); raise the guard to override")]
    GuardExceeded { what: &'static str, n: usize, limit: usize },

    #[error("scaling entries must be strictly positive, got {value} at position {index}")]
    NonPositiveScaling { index: usize, value: String },

    #[error("number of polynomial variables mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
