use alloc::string::String;

use crate::linalg::DensityViolation;

/// Errors raised by the core routines.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has {found} entries, expected {expected}")]
    BadShape { expected: usize, found: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("result dimension {requested} exceeds the cap {cap}")]
    SizeCap { requested: usize, cap: usize },

    #[error("eigenvalue iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("invalid density matrix: {0}")]
    Density(DensityViolation),

    #[error("invalid probability vector: {0}")]
    Probability(String),

    #[error("invalid measurement: {0}")]
    Measurement(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;
