//! Library half of the `flipdist` command: configuration handling and the
//! command implementations.

pub mod commands;
pub mod config;

pub use commands::{run, CliError, ExitStatus, Outcome};
pub use config::{Command, ConfigError, ConfigFile, Format, Overrides, RunConfig};
