//! Instance files, JSON reports and the command-line interface over
//! `seedmech-core`.

pub mod cli;
pub mod error;
pub mod formats;
pub mod report;

pub use cli::{invoke, Invocation};
pub use error::{CliError, CliResult};
pub use formats::{load_instance, parse_instance, LoadedInstance};
