use std::fmt;

use supcenter_core::Error;

/// Failure classes with their process exit codes.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// A certificate was checked and did not hold (exit 1).
    Failed(String),
    /// Malformed or inconsistent input (exit 2).
    Input(String),
    /// The LP or enumeration machinery gave up (exit 3).
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Input(_) => 2,
            CliError::Solver(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) => write!(f, "check failed: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible | Error::Unbounded | Error::NumericalFailure(_) => {
                CliError::Solver(e.to_string())
            }
            Error::Certificate(_) => CliError::Failed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
