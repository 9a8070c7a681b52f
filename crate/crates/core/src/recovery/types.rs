use serde::{Deserialize, Serialize};

use crate::linalg::{norm2, DenseVector};
use crate::{Error, Result};

/// Relative residual threshold used when none is given.
pub const DEFAULT_RELATIVE_EPSILON: f64 = 1e-6;

/// Relative error below which a reconstruction counts as exact.
pub const DEFAULT_EXACT_TOL: f64 = 1e-4;

/// A sparse vector of length `n` given by its support and nonzero values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseSignal {
    n: usize,
    support: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSignal {
    /// `support` is sorted on construction (values follow their indices).
    pub fn new(n: usize, support: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::invalid("support must be non-empty"));
        }
        if support.len() != values.len() {
            return Err(Error::dims(format!(
                "{} support indices but {} values",
                support.len(),
                values.len()
            )));
        }
        if let Some(&i) = support.iter().find(|&&i| i >= n) {
            return Err(Error::invalid(format!("support index {i} out of range for n = {n}")));
        }
        if values.iter().any(|v| !v.is_finite() || *v == 0.0) {
            return Err(Error::invalid("signal values must be finite and nonzero"));
        }
        let mut pairs: Vec<(usize, f64)> = support.into_iter().zip(values).collect();
        pairs.sort_by_key(|p| p.0);
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::invalid("support indices must be distinct"));
        }
        let (support, values) = pairs.into_iter().unzip();
        Ok(Self { n, support, values })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sparsity(&self) -> usize {
        self.support.len()
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.n];
        for (&i, &v) in self.support.iter().zip(&self.values) {
            x[i] = v;
        }
        x
    }
}

/// Residual-norm stopping threshold.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Epsilon {
    /// Multiplied by `||y||_2`.
    Relative(f64),
    Absolute(f64),
}

impl Default for Epsilon {
    fn default() -> Self {
        Epsilon::Relative(DEFAULT_RELATIVE_EPSILON)
    }
}

impl Epsilon {
    pub fn threshold(&self, y_norm: f64) -> f64 {
        match *self {
            Epsilon::Relative(e) => e * y_norm,
            Epsilon::Absolute(e) => e,
        }
    }

    fn validate(&self) -> Result<()> {
        let (Epsilon::Relative(e) | Epsilon::Absolute(e)) = *self;
        if e.is_finite() && e >= 0.0 {
            Ok(())
        } else {
            Err(Error::invalid(format!("epsilon must be finite and >= 0, got {e}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    /// Indices selected per iteration.
    pub big_n: usize,
    pub sparsity_k: usize,
    pub epsilon: Epsilon,
    /// Overrides the default cap `min(K, floor(m / N))`.
    pub max_iters: Option<usize>,
}

impl RecoveryConfig {
    pub fn new(big_n: usize, sparsity_k: usize) -> Result<Self> {
        let cfg = Self {
            big_n,
            sparsity_k,
            epsilon: Epsilon::default(),
            max_iters: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_epsilon(mut self, epsilon: Epsilon) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_max_iters(mut self, max_iters: usize) -> Self {
        self.max_iters = Some(max_iters);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.big_n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        if self.sparsity_k == 0 {
            return Err(Error::invalid("K must be at least 1"));
        }
        self.epsilon.validate()
    }

    /// Iteration cap for `m` measurements.
    pub fn iteration_cap(&self, m: usize) -> usize {
        self.max_iters
            .unwrap_or_else(|| self.sparsity_k.min(m / self.big_n))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationTrace {
    /// 1-based iteration number.
    pub k: usize,
    pub selected: Vec<usize>,
    pub residual_norm: f64,
    pub support_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    ResidualBelowEpsilon,
    IterationCap,
    RankDeficient,
    /// CoSaMP only: the residual norm did not decrease.
    ResidualStalled,
    /// Fewer than `N` unselected columns remain.
    ColumnsExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecoveryFlag {
    /// CoSaMP with `3K > m`: merged least-squares sets may exceed the rank.
    MergeExceedsRows,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    /// Final support estimate in admission order.
    pub support_estimate: Vec<usize>,
    pub x_hat: DenseVector,
    pub traces: Vec<IterationTrace>,
    pub converged: bool,
    pub stop_reason: StopReason,
    pub modeled_flops: u64,
    pub flags: Vec<RecoveryFlag>,
}

impl RecoveryResult {
    pub fn iterations(&self) -> usize {
        self.traces.len()
    }

    pub fn sorted_support(&self) -> Vec<usize> {
        let mut s = self.support_estimate.clone();
        s.sort_unstable();
        s
    }
}

/// `||x_hat - x||_2 / ||x||_2 <= tol`.
pub fn exact_recovery(x_true: &SparseSignal, result: &RecoveryResult, tol: f64) -> Result<bool> {
    if x_true.len() != result.x_hat.len() {
        return Err(Error::dims(format!(
            "signal length {} vs estimate length {}",
            x_true.len(),
            result.x_hat.len()
        )));
    }
    let x = x_true.to_dense();
    let diff: Vec<f64> = result.x_hat.iter().zip(&x).map(|(a, b)| a - b).collect();
    Ok(norm2(&diff) <= tol * norm2(&x))
}
