//! Command-line front end: file formats, subcommands and verification sweeps.
//!
//! Exit codes: 0 success, 2 parse or validation error, 3 failed
//! precondition (including failed certification), 4 search limit exceeded.

pub mod certify;
pub mod commands;
pub mod format;

use polyfract::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("{0}")]
    Precondition(String),
    #[error("{0}")]
    TooLarge(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Validation(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::TooLarge(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::TooLarge { .. } => CliError::TooLarge(msg),
            Error::OutOfRange { .. }
            | Error::LengthMismatch { .. }
            | Error::ArityMismatch { .. }
            | Error::BadVariableIndex { .. }
            | Error::ModulusMismatch(..)
            | Error::NotADivisor { .. }
            | Error::ZeroInput
            | Error::NotPrime(_) => CliError::Validation(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
