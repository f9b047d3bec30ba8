use thiserror::Error;

/// Errors raised by the algebra, numerics and analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} sites")]
    LengthMismatch { left: usize, right: usize },

    #[error("chain length {0} is outside the supported range 1..=64")]
    UnsupportedLength(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("operator has zero norm")]
    ZeroNorm,

    #[error("operator is not Hermitian (anti-Hermitian residual {0:.3e})")]
    NotHermitian(f64),

    #[error("operator is not anti-Hermitian (Hermitian residual {0:.3e})")]
    NotAntiHermitian(f64),

    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    #[error("operator is not translation invariant")]
    NotTranslationInvariant,

    #[error("dense dimension 2^{len} exceeds the cap 2^{cap}")]
    DimensionCap { len: usize, cap: usize },

    #[error("observable lies outside the basis span (uncaptured weight {0:.3e})")]
    OutsideSpan(f64),

    #[error("lambda matrix asymmetry {0:.3e} exceeds tolerance")]
    Asymmetric(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fit failed: {0}")]
    FitFailed(String),

    #[error("linear algebra failure: {0}")]
    Linalg(String),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
