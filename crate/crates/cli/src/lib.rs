//! Command-line driver for the Quinpi schemes: configuration, single runs,
//! studies and CSV output.

pub mod config;
pub mod error;
pub mod output;
pub mod runner;
pub mod studies;

pub use error::CliError;
