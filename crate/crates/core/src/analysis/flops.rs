//! Floating-point operation counts for gOMP.
//!
//! Per iteration `k` (1-based) with `N` picks, `m` rows and `n` columns:
//!
//! | step | flops |
//! |------|-------|
//! | selection (`Phi' r` plus partial sort) | `(2m - 1 + N) n - N(N + 1)/2` |
//! | least squares with recycled QR | `4N^2 km + (5N - 2N^2) m + 2N^3 k^2 + (5N^2 - 4N^3) k + 3N^3 - N^2 - N` |
//! | residual update | `2Nkm` |
//!
//! The least-squares polynomial counts the explicit `(R'R)^{-1}` block
//! recursion. The numeric path solves by back-substitution instead; the
//! model keeps the published count.
//!
//! Over `S` iterations the closed-form approximation is
//! `2Smn + (2N^2 + N) S^2 m`. Exact and approximate totals are reported side
//! by side and never mixed.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationFlops {
    pub k: usize,
    pub selection: u64,
    pub estimation: u64,
    pub residual_update: u64,
}

impl IterationFlops {
    pub fn total(&self) -> u64 {
        self.selection + self.estimation + self.residual_update
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlopBreakdown {
    pub big_n: usize,
    pub m: usize,
    pub n: usize,
    pub iterations: Vec<IterationFlops>,
    /// Sum of the exact per-iteration counts.
    pub total_exact: u64,
    /// Closed-form `2Smn + (2N^2 + N) S^2 m`.
    pub total_approx: u64,
}

fn to_count(v: i128) -> u64 {
    u64::try_from(v.max(0)).unwrap_or(u64::MAX)
}

pub fn selection_flops(big_n: usize, m: usize, n: usize) -> u64 {
    let (nn, m, n) = (big_n as i128, m as i128, n as i128);
    to_count((2 * m - 1 + nn) * n - nn * (nn + 1) / 2)
}

/// Least-squares cost of iteration `k` with recycled factorization.
pub fn ls_flops(big_n: usize, k: usize, m: usize) -> u64 {
    let (nn, k, m) = (big_n as i128, k as i128, m as i128);
    let n2 = nn * nn;
    let n3 = n2 * nn;
    to_count(
        4 * n2 * k * m + (-2 * n2 + 5 * nn) * m + 2 * n3 * k * k + (-4 * n3 + 5 * n2) * k + 3 * n3
            - n2
            - nn,
    )
}

pub fn residual_update_flops(big_n: usize, k: usize, m: usize) -> u64 {
    to_count(2 * big_n as i128 * k as i128 * m as i128)
}

/// `2Smn + (2N^2 + N) S^2 m`.
pub fn approx_total_flops(big_n: usize, m: usize, n: usize, iterations: usize) -> u64 {
    let (nn, m, n, s) = (big_n as i128, m as i128, n as i128, iterations as i128);
    to_count(2 * s * m * n + (2 * nn * nn + nn) * s * s * m)
}

pub fn flop_model(big_n: usize, m: usize, n: usize, iterations: usize) -> FlopBreakdown {
    let per: Vec<IterationFlops> = (1..=iterations)
        .map(|k| IterationFlops {
            k,
            selection: selection_flops(big_n, m, n),
            estimation: ls_flops(big_n, k, m),
            residual_update: residual_update_flops(big_n, k, m),
        })
        .collect();
    let total_exact = per.iter().map(IterationFlops::total).sum();
    FlopBreakdown {
        big_n,
        m,
        n,
        iterations: per,
        total_exact,
        total_approx: approx_total_flops(big_n, m, n, iterations),
    }
}

/// Rough count for one CoSaMP iteration that solves least squares over `p`
/// merged columns with a fresh modified Gram-Schmidt factorization.
pub fn cosamp_iteration_flops(m: usize, n: usize, sparsity_k: usize, p: usize) -> u64 {
    let (m, n, k, p) = (m as i128, n as i128, sparsity_k as i128, p as i128);
    let proxy = (2 * m - 1) * n;
    let pick = 2 * k * n - 2 * k * (2 * k + 1) / 2;
    let qr = 2 * m * p * p + m * p;
    let solve = (2 * m - 1) * p + p * p;
    let prune = k * p;
    let residual = 2 * k * m;
    to_count(proxy + pick + qr + solve + prune + residual)
}
