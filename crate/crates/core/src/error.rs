use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular: |det| = {det:e} does not exceed tolerance {tolerance:e}")]
    SingularMatrix { det: f64, tolerance: f64 },

    #[error("non-finite value in {what}")]
    NonFinite { what: &'static str },

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("matrix is not lower-triangular: entry ({row}, {col}) is nonzero")]
    NotLowerTriangular { row: usize, col: usize },

    #[error("diagonal entry {index} is zero")]
    ZeroDiagonal { index: usize },

    #[error("matrix is not orthogonal: max |kᵀk - I| = {defect:e}")]
    NotOrthogonal { defect: f64 },

    #[error("{what} did not converge")]
    NoConvergence { what: &'static str },

    #[error("Gamma pole in factor j = {index}: argument {argument} is a non-positive integer")]
    Pole { index: usize, argument: Complex64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integrand returned a non-finite value at sample {sample}")]
    NonFiniteIntegrand { sample: u64 },

    #[error("{rejected} of {samples} samples were rejected as numerically singular")]
    TooManyRejected { rejected: u64, samples: u64 },

    #[error("|phi_eps(g)| = {value:e} is too small to divide by; choose another evaluation point")]
    DegenerateVector { value: f64 },

    #[error("monomial repeats matrix entry ({row}, {col})")]
    NotSquarefree { row: usize, col: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
