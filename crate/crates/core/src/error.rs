use thiserror::Error;

use crate::structure::CriticalPairReport;

/// Which of the two sequences of a pair an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Side {
    F,
    G,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::F => f.write_str("f"),
            Side::G => f.write_str("g"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: expected {expected}, found {found}")]
    DimensionMismatch {
        op: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("eigensolver order {0} exceeds the supported maximum of 64")]
    OrderTooLarge(usize),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("least squares direction vector is zero")]
    ZeroDirection,

    #[error("alpha_{} is zero", .index + 1)]
    ZeroAlpha { index: usize },

    #[error("{side}_{} is the zero vector", .index + 1)]
    ZeroVector { side: Side, index: usize },

    #[error("degenerate pairing at index {}: |<f, g>| below threshold", .index + 1)]
    DegeneratePairing { index: usize },

    #[error("pair is not in the constraint set (max residual {max_residual:e} > {limit:e})")]
    ConstraintViolation { max_residual: f64, limit: f64 },

    #[error("pair is not critical (max residual {:e})", .0.max_residual())]
    NotCritical(Box<CriticalPairReport>),

    #[error(
        "eigenvalue clusters are ambiguous: cluster spread {spread:e} exceeds radius {radius:e}"
    )]
    AmbiguousClusters { spread: f64, radius: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
