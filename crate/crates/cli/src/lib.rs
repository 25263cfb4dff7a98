//! Configuration, initial data, single runs and sweeps for the `adhesion`
//! command-line simulator.

pub mod config;
pub mod ic;
pub mod output;
pub mod run;
pub mod sweep;

pub use config::{BcKind, ConfigError, Overrides, RunConfig};
pub use run::{run_to_dir, simulate, RunError, RunManifest, RunOutcome};
pub use sweep::{sweep, SweepError, SweepIndex};

/// Environment variable naming the default output root.
pub const OUTPUT_ROOT_ENV: &str = "ADHESION_OUTPUT_ROOT";
