//! Library behind the `tl-align` binary: config language, report
//! rendering and the subcommand implementations, kept callable for tests.

pub mod commands;
pub mod config;
pub mod report;
pub mod units;

pub use config::{parse_config, ConfigError, Instrument, InstrumentConfig};

use std::fmt;
use std::io;

/// A command failure the binary turns into a non-zero exit.
#[derive(Debug)]
pub enum CliError {
    Io(io::Error),
    Input(String),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Input(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}
