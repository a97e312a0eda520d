//! Library side of the `dsw` command: input readers, the comparison
//! document, the verification suites and the command dispatcher.

pub mod app;
pub mod document;
pub mod ingest;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad files, flags or values. Exit code 2.
    #[error("input error: {0}")]
    Input(String),
    /// A computed result broke one of its guarantees. Exit code 1.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 1,
        }
    }
}

impl From<dsw_core::DswError> for CliError {
    fn from(e: dsw_core::DswError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
