//! Command-line error classes and their exit codes.

use thiserror::Error;

/// A failed command, classified by cause.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent configuration (exit code 2).
    #[error("{0}")]
    Config(String),
    /// The engine failed numerically, e.g. an unstable step (exit code 3).
    #[error("{0}")]
    Numerical(String),
    /// The command ran but at least one check failed (exit code 4).
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Validation(_) => 4,
        }
    }
}

impl From<kgcavity::Error> for CliError {
    fn from(e: kgcavity::Error) -> Self {
        if e.is_configuration() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numerical(e.to_string())
        }
    }
}
