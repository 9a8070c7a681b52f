//! Monte Carlo recovery experiments.
//!
//! Every trial draws a fresh sensing matrix and a fresh signal from seeds
//! derived by [`trial_seed`], so results do not depend on how trials are
//! scheduled.

mod emit;
mod signal;
mod sweep;

pub use emit::{emit, parse_csv, write_csv, write_json, OutputFormat, CSV_HEADER};
pub use signal::{generate_signal, SignalKind};
pub use sweep::{
    critical_sparsity, run_sweep, run_trial, trial_seed, Algorithm, BenchConfig, Ensemble,
    SummaryRow, TrialOutcome,
};
