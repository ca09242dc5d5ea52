use std::fmt;
use std::process::ExitCode;

use junction::Error;

/// A command outcome other than success, carrying its exit code.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    /// Exit 2: the input parsed but failed a mathematical check.
    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    /// Exit 3: unreadable input or an invalid configuration.
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidGeometry(_) | Error::InvalidExtendedReal(_) | Error::InvalidWavenumber(_) => {
                Self::config(e.to_string())
            }
            _ => Self::validation(e.to_string()),
        }
    }
}
