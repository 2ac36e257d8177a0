//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the analytic modules.
#[derive(Error, Debug, Clone)]
pub enum CqsError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("basis is rank-deficient: rank {rank} < {dim} vectors")]
    RankDeficient { rank: usize, dim: usize },

    #[error("subspace is not isotropic: max |omega(b_i, b_j)| = {residual:.3e}")]
    NotIsotropic { residual: f64 },

    #[error("bases are not dual-normalized: max |omega(X_a, Y_b) - delta_ab| = {residual:.3e}")]
    NotDual { residual: f64 },

    #[error("matrix is singular or nearly singular")]
    Singular,

    #[error("invalid Gaussian state: {0}")]
    InvalidGaussian(String),

    #[error("polynomial degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("germ is invalid: {0}")]
    InvalidGerm(String),

    #[error("Hamiltonian is incompatible with the constraint plane: membership residual {residual:.3e}")]
    Incompatible { residual: f64 },

    #[error("amplitude branch tracking failed: determinant argument jumped by {jump:.3} rad in one sub-step; increase `steps`")]
    BranchTracking { jump: f64 },

    #[error("reduced classical system is unstable: {0}")]
    Unstable(String),

    #[error("unsupported spectrum: {0}")]
    UnsupportedSpectrum(String),

    #[error("mode decomposition failed: {0}")]
    Decomposition(String),

    #[error("closed-form routes disagree: {a:.12e} vs {b:.12e} (|delta| = {delta:.3e})")]
    RouteMismatch { a: f64, b: f64, delta: f64 },

    #[error("gauge weight is not normalized: rho(0)*Delta = {got:.6}; expected 1")]
    WeightNotNormalized { got: f64 },

    #[error("oracle cost guard: {0}")]
    OracleCostGuard(String),

    #[error("oracle did not converge: {0}")]
    OracleNonConvergent(String),

    #[error("linear algebra backend failure: {0}")]
    Backend(String),
}

pub type Result<T> = std::result::Result<T, CqsError>;

impl From<ndarray_linalg::error::LinalgError> for CqsError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        CqsError::Backend(e.to_string())
    }
}
