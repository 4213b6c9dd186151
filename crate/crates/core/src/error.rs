use thiserror::Error;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or out-of-domain input.
    Input,
    /// A mathematical invariant failed to hold.
    Invariant,
    /// A configured size cap was exceeded.
    Resource,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid simple type `{label}`: {reason}")]
    InvalidType { label: String, reason: String },

    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight ({0}) is not dominant")]
    NotDominant(String),

    #[error("q must satisfy 0 < q < 1, got {0}")]
    InvalidQ(f64),

    #[error("q = 1 has no deformed value; use the classical formula")]
    ClassicalQ,

    #[error("radius must be positive")]
    InvalidRadius,

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error("duplicate entry {0}")]
    Duplicate(String),

    #[error("coefficient for ({0}) must be positive")]
    NonPositiveCoefficient(String),

    #[error("root system has {0} simple factors; a simple root system is required")]
    NotSimple(usize),

    #[error("block for ({lambda}) has shape {rows}x{cols}, expected {dim}x{dim}")]
    BlockShape {
        lambda: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("scan of {wanted} rows exceeds the row cap of {cap}")]
    RowCap { cap: usize, wanted: usize },

    #[error("enumeration of {wanted} items exceeds the cap of {cap}")]
    EnumerationCap { cap: usize, wanted: u128 },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Invariant(_) => ErrorKind::Invariant,
            Error::RowCap { .. } | Error::EnumerationCap { .. } => ErrorKind::Resource,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
