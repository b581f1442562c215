//! Command failures and their exit codes.

use coalition_forge_core::Error as CoreError;

/// A failed command.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad flags, unknown ids or names, malformed input text.
    #[error("{0}")]
    Usage(String),
    /// Input that parses but does not describe a valid game or family.
    #[error("{0}")]
    Validation(String),
    /// Reading or writing a file.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: String,
        /// Underlying error.
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit code: 2 for usage and parse errors, 3 for validation errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Validation(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidArgument(_) | CoreError::Overflow { .. } => CliError::Usage(e.to_string()),
            CoreError::Validation(_) | CoreError::NotNested(_) => CliError::Validation(e.to_string()),
        }
    }
}

/// Result alias for commands.
pub type Result<T> = std::result::Result<T, CliError>;
