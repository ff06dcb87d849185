use thiserror::Error;

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("certificate refused at claim {index}: {reason}")]
    Refused { index: usize, reason: String },
    #[error("certificate refused: {0}")]
    Incomplete(String),
    #[error("numerical check failed: {0}")]
    Numerical(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] cubicgap_core::Error),
    #[error("malformed certificate: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, CertifyError>;
