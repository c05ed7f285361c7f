//! Error type shared across the crate.

/// Errors reported by validation, solvers, samplers and estimators.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not symmetric: |a[{i}][{j}] - a[{j}][{i}]| = {delta:e} exceeds tolerance")]
    NotSymmetric { i: usize, j: usize, delta: f64 },

    #[error("diagonal entry [{i}][{i}] = {value} differs from 1 beyond tolerance")]
    BadDiagonal { i: usize, value: f64 },

    #[error("entry [{i}][{j}] = {value} lies outside [0,1]")]
    OutOfRange { i: usize, j: usize, value: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("mixing weight {0} lies outside [0,1]")]
    BadWeight(f64),

    #[error("{0}")]
    BadParam(String),

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimTooLarge { dim: usize, max: usize },

    #[error("probabilities sum to {0}, drift from 1 exceeds tolerance")]
    BadProbabilityMass(f64),

    #[error("row {row} is not diagonally dominant: off-diagonal sum exceeds diagonal")]
    NotDiagonallyDominant { row: usize },

    #[error("point lies outside the unit cube at coordinate {0}")]
    BadPoint(usize),

    #[error("no closed-form copula evaluator: {0}")]
    UnsupportedFactor(String),

    #[error("invalid model: {0}")]
    BadModel(String),

    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("threshold k = {k} is invalid for n = {n} (need 1 <= k <= n/4)")]
    BadThreshold { k: usize, n: usize },

    #[error("solver is numerically ill-conditioned: {0}")]
    NumericallyIllConditioned(String),
}

pub type Result<T> = std::result::Result<T, Error>;
