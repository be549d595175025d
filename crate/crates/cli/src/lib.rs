//! Configuration, experiment orchestration and tabular output for the
//! `rabiqed` command.

pub mod config;
mod error;
pub mod experiment;
pub mod output;

pub use config::{parse_config, Experiment, Format, RunConfig};
pub use error::{CliError, Result};
pub use experiment::run_experiment;
pub use output::{write_output, Cell, ResultTable};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RABIQED_THREADS";

/// Reads a thread cap from the value of [`THREADS_ENV`]. Empty means no cap.
pub fn parse_thread_cap(value: Option<&str>) -> Result<Option<usize>> {
    match value.map(str::trim) {
        None | Some("") => Ok(None),
        Some(s) => match s.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(CliError::Invalid {
                key: THREADS_ENV.into(),
                reason: format!("expected a positive integer, got `{s}`"),
            }),
        },
    }
}
