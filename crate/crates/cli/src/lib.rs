//! Library side of the `qmm` command-line tool: report types, file
//! formats, and the command implementations, kept separate from argument
//! parsing so integration tests can drive them directly.

use std::fmt;

pub mod commands;
pub mod formats;
pub mod report;

/// Errors surfaced to the command line; all map to the "invalid config or
/// data" exit code except where commands signal through their reports.
#[derive(Debug)]
pub enum CliError {
    Core(qmm_core::Error),
    Config(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(err) => write!(f, "{err}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Io(err) => write!(f, "{err}"),
            CliError::Json(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qmm_core::Error> for CliError {
    fn from(err: qmm_core::Error) -> Self {
        CliError::Core(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Json(err)
    }
}
