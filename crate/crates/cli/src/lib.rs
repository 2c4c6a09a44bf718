//! Command surface for `ramstat`: sweeps, chi-squared tables, trade-graph
//! reports, expectation simulations and bound tables, each written to an
//! output directory together with a `manifest.json`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Outcome};
pub use config::{Command, InputFormat, OutputFormat, RunConfig};
pub use error::{CliError, CliResult};
