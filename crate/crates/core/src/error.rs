use num_complex::Complex64;
use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree zero unsupported")]
    DegreeZero,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("root finder did not converge after {iterations} iterations (max residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<Complex64>,
    },

    #[error("{point} is not a zero of the polynomial (|p(a)| = {residual:e})")]
    NotAZero { point: Complex64, residual: f64 },

    #[error("non-generic critical point: {0}")]
    NonGeneric(String),

    #[error("degenerate direction: |d| = {0:e}")]
    DegenerateDirection(f64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("quadrature did not reach the error target (estimate {0:e})")]
    Quadrature(f64),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("simplex iteration cap ({0}) exceeded")]
    IterationCap(usize),

    #[error("combinatorial size {count} exceeds the cap of {cap}")]
    TooLarge { count: usize, cap: usize },

    #[error("unknown test function '{0}'")]
    UnknownFunction(String),

    #[error("matrix is not normal (residual {0:e})")]
    NotNormal(f64),

    #[error("ambiguous eigenvalue clustering (gap {0:e})")]
    Clustering(f64),

    #[error("orthonormalization broke down")]
    Breakdown,

    #[error("malformed polynomial JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
