use thiserror::Error;

/// Errors produced by the library layer.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("operator is not Hermitian: max |M - M^H| = {deviation:.3e}")]
    NotHermitian { deviation: f64 },

    #[error(
        "Fock truncation too small: |v|^2 = {mean_occupation:.3} needs n_max > {required}, got {n_max}"
    )]
    TruncationTooSmall {
        mean_occupation: f64,
        required: usize,
        n_max: usize,
    },

    #[error("phase point outside the coherent-label domain: q^2 + p^2 = {radius_sq:.6} >= {pole:.6}")]
    OutsideLabelDomain { radius_sq: f64, pole: f64 },

    #[error("invalid factor id: {0:?}")]
    InvalidFactor(&'static str),

    #[error("monomial degree {degree} exceeds the supported bound {max} per mode")]
    UnsupportedExponent { degree: u32, max: u32 },

    #[error("state is not a product of the supplied factors")]
    NotAProductState,

    #[error("time grid must be strictly increasing and start at t >= 0")]
    BadTimeGrid,

    #[error("Krylov propagation failed: {0}")]
    KrylovBreakdown(String),

    #[error("fit did not converge after {iterations} iterations (residual {residual:.3e})")]
    FitDiverged { iterations: usize, residual: f64 },

    #[error("fit window ill-conditioned: {0}")]
    IllConditionedFit(String),

    #[error("degenerate ensemble: {0}")]
    DegenerateEnsemble(String),

    #[error("undefined quantity: {0}")]
    Undefined(String),

    #[error("linear algebra backend error: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for CoreError {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        CoreError::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
