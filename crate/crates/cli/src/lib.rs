//! Command-line front end for the `qent4` library: state documents, reports,
//! property verification, figure data and optimization runs.

pub mod commands;
pub mod document;
pub mod error;
pub mod figure;
pub mod verify;

pub use commands::{run, run_process, Cli, Io};
pub use error::{CliError, CliResult};
