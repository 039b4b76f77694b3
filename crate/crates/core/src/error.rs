use thiserror::Error;

/// Errors raised by matroid construction, enumeration, and file parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix has {0} columns; at most 64 are supported")]
    TooManyColumns(usize),

    #[error("{labels} labels given for a matrix with {columns} columns")]
    LabelCount { labels: usize, columns: usize },

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("ground set of size {size} exceeds the enumeration bound {bound}")]
    GroundSetTooLarge { size: usize, bound: usize },

    #[error("matroid `{0}` is not cographic")]
    NotCographic(String),

    #[error("k = {k} exceeds the ground set size {size}")]
    SubsetTooLarge { k: usize, size: usize },

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
