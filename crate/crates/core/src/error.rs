use thiserror::Error;

use crate::scalar::Algebra;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("wrong algebra: expected {expected}, found {found}")]
    WrongAlgebra { expected: Algebra, found: Algebra },

    #[error("input vectors are numerically dependent (residual norm {residual:e})")]
    DegenerateInput { residual: f64 },

    #[error("basis is incomplete: {found} orthonormal vectors for dimension {expected}")]
    IncompleteBasis { expected: usize, found: usize },

    #[error("matrix is not Hermitian (|A - A*| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive (minimum eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not unitary (|U*U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:e})"
    )]
    ConvergenceFailure { sweeps: usize, off_diagonal: f64 },

    #[error("not a density operator: {0}")]
    NotADensityOperator(String),

    #[error("not a frame function: {0}")]
    NotAFrameFunction(String),

    #[error("invalid convex weights: {0}")]
    InvalidWeights(String),

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("variance radicand {radicand:e} is negative beyond rounding")]
    NegativeVariance { radicand: f64 },

    #[error("invalid matrix encoding: {0}")]
    Encoding(String),
}
