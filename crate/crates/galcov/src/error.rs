use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid value for {flag}: {reason}")]
    Usage { flag: &'static str, reason: String },

    #[error("unknown format tag `{0}`")]
    UnknownFormat(String),

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error(transparent)]
    Core(#[from] galcov_core::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } | CliError::UnknownFormat(_) => 2,
            CliError::Core(galcov_core::Error::InvalidGrid { .. }) => 2,
            _ => 1,
        }
    }
}
