use std::fmt;
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISSING_INPUT: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_BUDGET: i32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn missing(path: &Path) -> Self {
        CliError {
            code: EXIT_MISSING_INPUT,
            message: format!("input file not found: {}", path.display()),
        }
    }

    pub fn parse(path: &Path, err: ramstat_core::Error) -> Self {
        CliError {
            code: EXIT_PARSE,
            message: format!("{}: {err}", path.display()),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        let code = if err.kind() == std::io::ErrorKind::NotFound {
            EXIT_MISSING_INPUT
        } else {
            EXIT_USAGE
        };
        CliError {
            code,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<ramstat_core::Error> for CliError {
    fn from(err: ramstat_core::Error) -> Self {
        let code = match err {
            ramstat_core::Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
