use thiserror::Error;

use crate::path::PathViolation;

/// Errors raised by the library. All of them describe bad input; the
/// algorithms themselves do not fail on valid data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DswError {
    #[error("series is empty")]
    EmptySeries,

    #[error("sample {index} has dimension {found}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },

    #[error("sample {index} is not finite")]
    NonFinite { index: usize },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("segment ({begin}, {end}) is not ordered")]
    UnorderedSegment { begin: usize, end: usize },

    #[error("segment ({begin}, {end}) has no interior point")]
    NoInterior { begin: usize, end: usize },

    #[error("rasterization endpoints ({i0}, {j0}) -> ({i1}, {j1}) are not monotone")]
    NonMonotoneEndpoints { i0: usize, j0: usize, i1: usize, j1: usize },

    #[error("invalid warping path: {0}")]
    InvalidPath(PathViolation),

    #[error("matrix shape mismatch: expected {expected_rows}x{expected_cols}, found {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix entry ({i}, {j}) = {value} is not a finite non-negative cost")]
    InvalidCost { i: usize, j: usize, value: f64 },

    #[error("compression is undefined when both spans are zero")]
    UndefinedCompression,

    #[error("operation requires univariate series, found dimension {0}")]
    NotUnivariate(usize),

    #[error("simplified path needs at least two key points")]
    TooFewKeyPoints,

    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, DswError>;
