use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    #[error("subsystem index {index} out of range for {count} subsystems")]
    SubsystemOutOfRange { index: usize, count: usize },

    #[error("composite dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("Jacobi eigensolver did not converge after {0} sweeps")]
    NoConvergence(usize),

    #[error("matrix is not positive semidefinite (eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("measure not computable here: {0}")]
    IncompatibleMeasure(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed state file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures caused by bad input (files, arguments, dimensions)
    /// as opposed to numerical breakdown.
    pub fn is_input_error(&self) -> bool {
        !matches!(
            self,
            Error::NoConvergence(_) | Error::NotPsd(_) | Error::NotHermitian(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
