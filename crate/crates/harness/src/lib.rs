//! Sweep orchestration for the `prethermal` simulator: configs, cached runs, CSV and SVG output.

pub mod cache;
pub mod config;
pub mod error;
pub mod observables;
pub mod plot;
pub mod runs;

use std::path::Path;

pub use cache::{cache_root, execute, Execution, Outputs, RunRecord, CACHE_ENV};
pub use config::{CachePolicy, Command, JtauGrid, SweepConfig};
pub use error::{HarnessError, Result};

/// Validates `config`, then runs `command` through the cache rooted at `root`.
pub fn run(command: Command, config: &SweepConfig, root: &Path) -> Result<Execution> {
    let compute = match command {
        Command::Dynamics => runs::run_dynamics,
        Command::Spectrum => runs::run_spectrum,
        Command::Expansions => runs::run_expansions,
        Command::Jc => runs::run_jc,
    };
    execute(command, config, root, compute)
}
