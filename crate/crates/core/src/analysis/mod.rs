//! Restricted isometry constants, sufficient recovery thresholds, the
//! per-iteration correlation bounds and the flop model.

mod bounds;
mod eigen;
mod flops;
mod iteration_bounds;
mod rip;

pub use bounds::{
    bound_first_iteration, bound_noninitial, bound_omp, bound_overall, rip_conditions,
    RipCondition,
};
pub use eigen::symmetric_eigenvalues;
pub use flops::{
    approx_total_flops, cosamp_iteration_flops, flop_model, ls_flops, residual_update_flops,
    selection_flops, FlopBreakdown, IterationFlops,
};
pub use iteration_bounds::{
    cross_gram_action_norm, gram_action_norm, verify_iteration_bounds, BoundReport, BoundStatus,
};
pub use rip::{
    binomial, rip_constant_bruteforce, support_defect, verify_monotonicity, RipEstimate,
    RipOracle, ENUMERATION_LIMIT,
};
