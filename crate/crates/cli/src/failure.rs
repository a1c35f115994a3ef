use std::fmt;

use twolevel::Error;

/// Process-level failure, mapped onto the documented exit codes.
#[derive(Debug)]
pub enum CliError {
    /// A validation run missed its bar.
    ValidationFailed(String),
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ValidationFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Core(Error::Resource { .. }) => 3,
            // An integration that cannot finish cannot certify anything.
            CliError::Core(Error::Integration { .. }) => 1,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::ValidationFailed(msg) => write!(f, "validation failed: {msg}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(Error::Resource { requested, limit }) => write!(
                f,
                "resource guard: {requested} samples requested, limit is {limit}"
            ),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(Error::Json(e))
    }
}
