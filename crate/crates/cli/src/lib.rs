//! Command-line front end for `ces-core`.
//!
//! Every subcommand builds one object, optionally verifies it, and writes
//! machine-readable output. Exit codes: 0 success, 2 invalid input, 3 a
//! verification result contradicting the expected outcome.

pub mod args;
pub mod commands;
pub mod schema;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("verification contradiction: {0}")]
    Contradiction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Contradiction(_) => 3,
        }
    }
}

impl From<ces_core::Error> for CliError {
    fn from(e: ces_core::Error) -> Self {
        match e {
            ces_core::Error::Internal(_) => CliError::Contradiction(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

/// What a command produced: text for stdout, and an exit code that is 3 when
/// the embedded verification disagreed with the expected outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

pub use args::Cli;
pub use commands::run;
