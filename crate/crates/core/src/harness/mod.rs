//! Trial orchestration: configuration, seeded single trials, parallel
//! experiments and their JSON-lines and CSV output.

mod config;
mod experiment;
mod seeds;
mod trial;

pub use config::{ExperimentConfig, TrialConfig, ValidationLevel, DEFAULT_DELTA_EXPONENT, DEFAULT_EPSILON};
pub use experiment::{read_trial_log, run_experiment, summarize_log, write_dumps, ExperimentSummary};
pub use seeds::{derive_seed, splitmix64, trial_seed, TrialSeeds};
pub use trial::{cycle_checksum, run_trial, Artifacts, ColorReport, Timings, TrialOutput, TrialReport};
