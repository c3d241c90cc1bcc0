use std::fmt;
use std::process::ExitCode;

/// No criterion was violated.
pub const EXIT_OK: u8 = 0;
/// Bad input file or failed validation.
pub const EXIT_INPUT: u8 = 1;
/// Bad flags or an unsupported combination.
pub const EXIT_USAGE: u8 = 2;
/// At least one criterion certified entanglement.
pub const EXIT_ENTANGLED: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Usage,
}

#[derive(Debug, Clone)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Input, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Usage, message: message.into() }
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self.kind {
            ErrorKind::Input => EXIT_INPUT,
            ErrorKind::Usage => EXIT_USAGE,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<entrosep_core::Error> for CliError {
    fn from(e: entrosep_core::Error) -> Self {
        use entrosep_core::Error as E;
        match e {
            E::Usage(_) | E::Domain(_) | E::Unsupported(_) | E::SizeCap { .. } => Self::usage(e.to_string()),
            _ => Self::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::input(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::input(e.to_string())
    }
}
