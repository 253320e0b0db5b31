use thiserror::Error;

use crate::rational::{format_rational, Rational};

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("Jacobi identity fails on (X{i}, X{j}, X{k}); residual {}", fmt_vec(.residual))]
    JacobiViolation { i: usize, j: usize, k: usize, residual: Vec<Rational> },
    #[error("algebra is not nilpotent: lower central series stabilizes at dimension {stable_dim}")]
    NotNilpotent { stable_dim: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket pair ({i}, {j}) must satisfy i < j")]
    PairOrder { i: usize, j: usize },
    #[error("bracket pair ({i}, {j}) given more than once")]
    DuplicatePair { i: usize, j: usize },
    #[error("preferred first flag vector is not central")]
    PreferredVectorNotCentral,
    #[error("form is not a 2-cocycle: violated on (X{i}, X{j}, X{k})")]
    NotACocycle { i: usize, j: usize, k: usize },
    #[error("form is not skew-symmetric")]
    NotSkew,
    #[error("family parameter must be nonzero")]
    ZeroParameter,
    #[error("pairing <xi0, X1> = {} but must equal 1", format_rational(.0))]
    PairingNotOne(Rational),
    #[error("coadjoint orbit is not flat")]
    NotFlat,
    #[error("symbols live on different grids")]
    GridMismatch,
    #[error("operation requires a 2-dimensional predual, got {0}")]
    DimensionNot2(usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("pseudo-distance calibration diverged: ratio grew from {first} to {last}")]
    CalibrationDiverged { first: f64, last: f64 },
    #[error("level alpha must be positive, got {0}")]
    AlphaNonPositive(f64),
    #[error("decomposition requires a covering")]
    CoverMissing,
    #[error("C2 = {c2} must exceed 2 C_m = {}", 2.0 * .c_m)]
    C2TooSmall { c2: f64, c_m: f64 },
    #[error("graph is not simple: {0}")]
    InvalidGraph(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
