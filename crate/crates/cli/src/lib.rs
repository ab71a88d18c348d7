//! Command-line harness for the double Jaynes-Cummings model: scenario
//! configuration, time sweeps, figure datasets and the invariant suite.

pub mod app;
pub mod commands;
pub mod config;
pub mod error;
pub mod table;

pub use config::{KeyValues, Quantity, Scenario};
pub use error::CliError;
pub use table::SweepResult;

/// Environment variable overriding the default figure output directory.
pub const OUT_DIR_ENV: &str = "DJCM_OUT_DIR";
/// Figure output directory when neither `--out-dir` nor [`OUT_DIR_ENV`] is set.
pub const DEFAULT_OUT_DIR: &str = "figures";
