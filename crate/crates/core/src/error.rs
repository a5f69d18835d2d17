use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("symbol is not nonnegative on the unit circle: {0}")]
    NotNonnegative(String),

    #[error("degenerate symbol: {0}")]
    DegenerateSymbol(String),

    #[error("iteration did not converge: {0}")]
    NotConverged(String),

    #[error("matrix is not positive semidefinite (pivot {pivot:e} at index {index})")]
    NotPsd { index: usize, pivot: f64 },

    #[error("element is not hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
