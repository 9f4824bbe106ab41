use crate::field2d::Coords;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coordinate tag mismatch: expected {expected:?}, found {found:?}")]
    Coords { expected: Coords, found: Coords },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("field is not hermitian (defect {0:.3e})")]
    NotHermitian(f64),

    #[error("numerical divergence: {0}")]
    Divergence(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
