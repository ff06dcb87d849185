use cubicgap_certify::CertifyError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("refuted: {0}")]
    Refuted(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("bad input: {0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Refuted(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Input(_) => 4,
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::Refused { .. } | CertifyError::Incomplete(_) => CliError::Refuted(e.to_string()),
            CertifyError::Numerical(_) | CertifyError::Decomposition(_) => CliError::Numerical(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<cubicgap_core::Error> for CliError {
    fn from(e: cubicgap_core::Error) -> Self {
        match e {
            cubicgap_core::Error::MaxIterExceeded(_) => CliError::Numerical(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
