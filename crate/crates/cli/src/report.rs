//! CLI error type carrying the process exit code.

use topoq_core::Error;

/// Exit code 2 for validation problems, 3 for failed numerical checks.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Numerical(String),
}

impl CliError {
    pub fn validation(message: String) -> Self {
        CliError::Validation(message)
    }

    pub fn numerical(message: String) -> Self {
        CliError::Numerical(message)
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) => m,
        }
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
