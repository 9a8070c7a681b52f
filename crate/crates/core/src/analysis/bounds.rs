//! Sufficient RIP thresholds for exact recovery.

use serde::Serialize;

/// `delta_order < threshold` guarantees the named property.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RipCondition {
    pub name: &'static str,
    pub order: usize,
    pub threshold: f64,
}

/// First gOMP iteration selects a correct index if
/// `delta_{K+N} < sqrt(N) / (sqrt(K) + sqrt(N))`.
pub fn bound_first_iteration(big_n: usize, sparsity_k: usize) -> f64 {
    let (n, k) = ((big_n as f64).sqrt(), (sparsity_k as f64).sqrt());
    n / (k + n)
}

/// After `k` successful iterations, iteration `k + 1` succeeds if
/// `delta_{NK} < sqrt(N) / (sqrt(K) + 2 sqrt(N))`.
pub fn bound_noninitial(big_n: usize, sparsity_k: usize) -> f64 {
    let (n, k) = ((big_n as f64).sqrt(), (sparsity_k as f64).sqrt());
    n / (k + 2.0 * n)
}

/// Overall sufficient condition for exact recovery in at most `K`
/// iterations, as `(rip_order, threshold)`.
pub fn bound_overall(big_n: usize, sparsity_k: usize) -> (usize, f64) {
    if sparsity_k == 1 {
        (2, 0.5)
    } else {
        (big_n * sparsity_k, bound_noninitial(big_n, sparsity_k))
    }
}

/// OMP recovers any `K`-sparse signal if `delta_{K+1} < 1 / (sqrt(K) + 1)`.
pub fn bound_omp(sparsity_k: usize) -> f64 {
    1.0 / ((sparsity_k as f64).sqrt() + 1.0)
}

pub fn rip_conditions(big_n: usize, sparsity_k: usize) -> Vec<RipCondition> {
    let (order, threshold) = bound_overall(big_n, sparsity_k);
    vec![
        RipCondition {
            name: "first_iteration",
            order: sparsity_k + big_n,
            threshold: bound_first_iteration(big_n, sparsity_k),
        },
        RipCondition {
            name: "noninitial_iteration",
            order: big_n * sparsity_k,
            threshold: bound_noninitial(big_n, sparsity_k),
        },
        RipCondition {
            name: "gomp_exact_recovery",
            order,
            threshold,
        },
        RipCondition {
            name: "omp_exact_recovery",
            order: sparsity_k + 1,
            threshold: bound_omp(sparsity_k),
        },
    ]
}
