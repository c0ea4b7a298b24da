//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("dimension {dim} exceeds net cap {cap}")]
    DimOverCap { dim: usize, cap: usize },

    #[error("net budget exceeded: {required} grid points needed, budget is {budget}")]
    NetBudgetExceeded { required: usize, budget: usize },

    #[error("net certification failed: sampled point at distance {observed:.3e} > delta {delta:.3e}")]
    NetCertificationFailed { observed: f64, delta: f64 },

    #[error("empty point list for LP construction")]
    EmptyPointList,

    #[error("infeasible cover LP: constraint point {index} (in K) is covered by no candidate translate")]
    UncoverablePoint { index: usize },

    #[error("LP solver failed: {0}")]
    SolverFailure(String),

    #[error("LP size {rows}x{cols} exceeds solver limit {limit}")]
    LpTooLarge { rows: usize, cols: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "rounding failed after {trials} trials (coverage failures: {coverage_failures}, \
         size failures: {size_failures})"
    )]
    RoundingRetriesExceeded {
        trials: usize,
        coverage_failures: usize,
        size_failures: usize,
    },

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("asymmetry detected: membership at {point:?} differs from its negation")]
    AsymmetricBody { point: Vec<f64> },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
