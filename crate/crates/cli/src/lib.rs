//! Library half of the `fuzzcrypt` command-line tool: configuration
//! parsing, report formatting and the subcommand bodies.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::Format;
pub use config::{parse_config, parse_config_str, PipelineConfig, SelectionConfig};
pub use error::CliError;
