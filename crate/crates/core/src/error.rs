use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("zero vector where a nonzero vector is required")]
    ZeroVector,

    #[error("matrix is not positive semidefinite (eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("not a density matrix: {0}")]
    InvalidState(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("unknown catalog name `{0}`")]
    UnknownName(String),

    #[error("state is not PPT (partial transpose eigenvalue {min_eigenvalue:e})")]
    NotPpt { min_eigenvalue: f64 },

    #[error("{which} has trivial kernel")]
    NoKernel { which: &'static str },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("trace pairing has imaginary part {imag:e}")]
    ComplexTrace { imag: f64 },
}
