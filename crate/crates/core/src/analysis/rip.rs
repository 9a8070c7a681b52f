//! Exact isometry constants by enumerating every support of a given size.
//!
//! `delta_K = max over |S| = K of max(lambda_max(G_S) - 1, 1 - lambda_min(G_S))`
//! with `G_S = Phi_S' Phi_S`. Enumeration is split by the first index of each
//! support; the per-branch maxima are combined by a deterministic reduction
//! (larger defect wins, lexicographically smaller support on ties).

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::DenseMatrix;
use crate::{Error, Result};

use super::eigen::symmetric_eigenvalues;

/// Largest number of supports a single brute-force call may enumerate.
pub const ENUMERATION_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RipEstimate {
    pub order: usize,
    pub delta: f64,
    pub argmax_support: Vec<usize>,
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// `max(lambda_max - 1, 1 - lambda_min)` of `Phi_S' Phi_S`.
pub fn support_defect(phi: &DenseMatrix, support: &[usize]) -> Result<f64> {
    let sub = phi.select_columns(support)?;
    let g = sub.gram();
    let mut buf = g.as_col_major().to_vec();
    Ok(defect_of(&mut buf, support.len()))
}

fn defect_of(buf: &mut [f64], k: usize) -> f64 {
    if k == 1 {
        return (buf[0] - 1.0).abs();
    }
    let eig = symmetric_eigenvalues(buf, k);
    (eig[k - 1] - 1.0).max(1.0 - eig[0])
}

/// Brute-force isometry constants of one matrix, memoized per order.
#[derive(Clone, Debug)]
pub struct RipOracle {
    gram: DenseMatrix,
    cache: HashMap<usize, RipEstimate>,
}

impl RipOracle {
    pub fn new(phi: &DenseMatrix) -> Self {
        Self {
            gram: phi.gram(),
            cache: HashMap::new(),
        }
    }

    pub fn columns(&self) -> usize {
        self.gram.cols()
    }

    /// `delta_0 = 0` by convention.
    pub fn delta(&mut self, order: usize) -> Result<f64> {
        if order == 0 {
            return Ok(0.0);
        }
        Ok(self.estimate(order)?.delta)
    }

    pub fn estimate(&mut self, order: usize) -> Result<RipEstimate> {
        if let Some(e) = self.cache.get(&order) {
            return Ok(e.clone());
        }
        let e = enumerate(&self.gram, order)?;
        self.cache.insert(order, e.clone());
        Ok(e)
    }
}

fn better(a: (f64, Vec<usize>), b: (f64, Vec<usize>)) -> (f64, Vec<usize>) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

fn enumerate(gram: &DenseMatrix, k: usize) -> Result<RipEstimate> {
    let n = gram.cols();
    if k == 0 || k > n {
        return Err(Error::invalid(format!("RIP order {k} must lie in 1..={n}")));
    }
    let count = binomial(n, k);
    if count > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            n,
            k,
            count,
            limit: ENUMERATION_LIMIT,
        });
    }

    let best = (0..=n - k)
        .into_par_iter()
        .map(|first| branch_max(gram, k, first))
        .reduce(|| (f64::NEG_INFINITY, Vec::new()), better);

    Ok(RipEstimate {
        order: k,
        delta: best.0.max(0.0),
        argmax_support: best.1,
    })
}

/// Maximum defect over supports whose smallest index is `first`.
fn branch_max(gram: &DenseMatrix, k: usize, first: usize) -> (f64, Vec<usize>) {
    let n = gram.cols();
    let g = gram.as_col_major();
    let mut idx: Vec<usize> = (first..first + k).collect();
    let mut buf = vec![0.0; k * k];
    let mut best = (f64::NEG_INFINITY, Vec::new());
    loop {
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                buf[a * k + b] = g[i * n + j];
            }
        }
        let d = defect_of(&mut buf, k);
        if d > best.0 {
            best = (d, idx.clone());
        }

        // advance positions 1..k in lexicographic order, index 0 stays fixed
        let mut pos = k;
        loop {
            if pos <= 1 {
                return best;
            }
            pos -= 1;
            if idx[pos] < n - (k - pos) {
                break;
            }
        }
        idx[pos] += 1;
        for p in pos + 1..k {
            idx[p] = idx[p - 1] + 1;
        }
    }
}

/// Exact `delta_K` of `phi` by enumerating all `C(n, K)` supports.
pub fn rip_constant_bruteforce(phi: &DenseMatrix, order_k: usize) -> Result<RipEstimate> {
    enumerate(&phi.gram(), order_k)
}

/// Checks `delta_{K1} <= delta_{K2} + 1e-12` for every pair of listed orders
/// with `K1 <= K2`.
pub fn verify_monotonicity(phi: &DenseMatrix, orders: &[usize]) -> Result<bool> {
    let mut oracle = RipOracle::new(phi);
    let mut deltas = Vec::with_capacity(orders.len());
    for &k in orders {
        deltas.push((k, oracle.delta(k)?));
    }
    Ok(deltas.iter().all(|&(k1, d1)| {
        deltas
            .iter()
            .filter(|&&(k2, _)| k1 <= k2)
            .all(|&(_, d2)| d1 <= d2 + 1e-12)
    }))
}
