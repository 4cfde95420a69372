use thiserror::Error;

/// A failed command, tagged with the process exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Verify(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("normalization error: {0}")]
    Norm(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Norm(_) => 3,
            CliError::Config(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl From<qent4::Error> for CliError {
    fn from(e: qent4::Error) -> Self {
        match e {
            qent4::Error::NotNormalized { .. } => CliError::Norm(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
