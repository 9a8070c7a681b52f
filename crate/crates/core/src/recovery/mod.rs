//! Greedy sparse recovery: gOMP, OMP (gOMP with `N = 1`) and CoSaMP.

mod cosamp;
mod gomp;
mod select;
mod types;

pub use cosamp::cosamp_recover;
pub use gomp::{gomp_recover, omp_recover, GompState};
pub use select::select_top_n;
pub use types::{
    exact_recovery, Epsilon, IterationTrace, RecoveryConfig, RecoveryFlag, RecoveryResult,
    SparseSignal, StopReason, DEFAULT_EXACT_TOL, DEFAULT_RELATIVE_EPSILON,
};
