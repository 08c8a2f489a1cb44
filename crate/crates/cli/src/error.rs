use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config keys or parameter values.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("computation failed: {0}")]
    Compute(#[from] dipcoh_core::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 0 success, 1 computational failure, 2 usage error.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
