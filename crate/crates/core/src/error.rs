use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimension must be at least 1")]
    Empty,

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not Hermitian: ||A - A*|| = {residual:e} exceeds {threshold:e}")]
    NotHermitian { residual: f64, threshold: f64 },

    #[error("matrix is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e} below -{threshold:e}")]
    NotPsd { min_eigenvalue: f64, threshold: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {min_eigenvalue:e} not above {threshold:e}")]
    NotPd { min_eigenvalue: f64, threshold: f64 },

    #[error("fractional power exponent {0} outside (0, 1]")]
    InvalidExponent(f64),

    #[error("kernel condition Ker(T*) ⊆ Ker(T) violated (containment residual {residual:e})")]
    KernelConditionViolated { residual: f64 },

    #[error("matrix is numerically singular (smallest singular value {sigma_min:e}, cutoff {cutoff:e})")]
    SingularInput { sigma_min: f64, cutoff: f64 },

    #[error("joint spectrum point has zero eigenvalue (|lambda| = {0:e})")]
    ZeroLambda(f64),

    #[error("vector `{0}` is zero")]
    ZeroVector(&'static str),

    #[error("degenerate input: {0}")]
    DegenerateSpec(String),

    #[error("matrix is not square-zero: ||T^2|| = {residual:e} exceeds {threshold:e}")]
    NotSquareZero { residual: f64, threshold: f64 },

    #[error("matrix is not quasinormal: ||T T*T - T*T T|| = {residual:e} exceeds {threshold:e}")]
    NotQuasinormal { residual: f64, threshold: f64 },

    #[error("matrix is not positive: {0}")]
    NotPositive(String),

    #[error("beta = {beta} outside the admissible disk |beta|^2 <= {radius_sq}")]
    InadmissibleBeta { beta: num_complex::Complex64, radius_sq: f64 },

    #[error("invalid rank {rank} for dimension {dim}")]
    InvalidRank { rank: usize, dim: usize },

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}
