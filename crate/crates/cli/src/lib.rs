//! Command-line front end of the `kgcavity` engine.
//!
//! Reads a flat TOML [`RunConfig`](config::RunConfig), dispatches one of the
//! [`commands`], and writes the resulting [`Table`](output::Table) as CSV or
//! JSON.  Errors map onto exit codes through [`CliError::exit_code`].

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use error::CliError;
