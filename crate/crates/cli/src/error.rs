use std::process::ExitCode;

use nanoshell_core::ShellError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("solver error: {0}")]
    Solver(ShellError),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<ShellError> for CliError {
    fn from(e: ShellError) -> Self {
        match e {
            ShellError::InvalidChirality { .. }
            | ShellError::InvalidGeometry(_)
            | ShellError::ThickShell { .. }
            | ShellError::InvalidModuli(_)
            | ShellError::InvalidGrid(_) => CliError::Config(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) | CliError::Io(_) => 2,
            CliError::Solver(_) => 3,
            CliError::Verification(_) => 4,
        })
    }
}
