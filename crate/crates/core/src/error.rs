use thiserror::Error;

/// Errors produced by the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GaborError {
    #[error("signal length must be at least 2, got {0}")]
    InvalidLength(usize),

    #[error("{field} = {value} does not divide L = {length}")]
    NotADivisor {
        field: &'static str,
        value: usize,
        length: usize,
    },

    #[error("shape mismatch: expected {expected}, got {actual}")]
    Shape { expected: usize, actual: usize },

    #[error("sequences live on different lattices")]
    LatticeMismatch,

    #[error("window is identically zero")]
    ZeroWindow,

    #[error("twisted-convolution operator is singular (sigma_min = {sigma_min:e}, tolerance = {tolerance:e})")]
    SingularAlgebra { sigma_min: f64, tolerance: f64 },

    #[error(
        "Gabor system is not a frame (lambda_min(S) = {lambda_min:e}, tolerance = {tolerance:e})"
    )]
    NotAFrame { lambda_min: f64, tolerance: f64 },

    #[error("adjoint-lattice shifts do not commute (phase deviation {deviation:e})")]
    NonCommutative { deviation: f64 },

    #[error("invalid p = {0}; expected 1, 2 or inf")]
    InvalidNorm(String),

    #[error("window recipe incompatible with L = {length}: {reason}")]
    IncompatibleRecipe { length: usize, reason: String },

    #[error("window is not a partition of unity with period {period} (deviation {deviation:e})")]
    PartitionOfUnity { period: usize, deviation: f64 },

    #[error("{0} is not a perfect square >= 4")]
    NotPerfectSquare(usize),

    #[error("empty window list")]
    EmptyWindowList,

    #[error("matrix too large for explicit construction ({rows}x{cols})")]
    MatrixTooLarge { rows: usize, cols: usize },

    #[error("invalid configuration field `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },

    #[error("parse error in {path} line {line}: {reason}")]
    Parse {
        path: String,
        line: usize,
        reason: String,
    },
}

pub type Result<T> = std::result::Result<T, GaborError>;

impl GaborError {
    pub(crate) fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        GaborError::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
