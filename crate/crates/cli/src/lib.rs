//! Library side of the `typeb` command: table construction for each family,
//! output formats and the threaded oracle.

pub mod families;
pub mod oracle;
pub mod render;

use std::fmt;

/// Errors surfaced by the command, each mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or a parameter outside a resource guard. Exit code 2.
    Usage(String),
    /// A verification check failed. Exit code 1.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Verification(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Verification(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<typeb_core::Error> for CliError {
    fn from(e: typeb_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
