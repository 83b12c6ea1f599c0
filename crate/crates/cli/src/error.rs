use std::path::PathBuf;

use thiserror::Error;

/// Exit status for a bad configuration (flags, file contents, unsupported setup).
pub const EXIT_CONFIG: i32 = 2;
/// Exit status when the solver aborts (Newton failure, CFL violation, ...).
pub const EXIT_SOLVER: i32 = 3;
/// Exit status for file system errors while writing results.
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cannot read config file {path}: {source}")]
    ConfigFile { path: PathBuf, source: std::io::Error },
    #[error("cannot parse config file {path}: {source}")]
    ConfigParse { path: PathBuf, source: toml::de::Error },
    #[error("solver failed: {0}")]
    Solver(#[from] quinpi_core::Error),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::ConfigFile { .. } | CliError::ConfigParse { .. } => EXIT_CONFIG,
            CliError::Solver(_) => EXIT_SOLVER,
            CliError::Io { .. } => EXIT_IO,
        }
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }
}
