use crate::analysis::flop_model;
use crate::linalg::{norm2, residual, DenseMatrix, DenseVector, QrState};
use crate::{Error, Result};

use super::select::select_top_n_masked;
use super::types::{Epsilon, IterationTrace, RecoveryConfig, RecoveryResult, StopReason};

/// The gOMP iteration as an explicit state machine.
///
/// After `k` calls to [`step`](Self::step) the state holds the support
/// `Lambda^k` (with `|Lambda^k| = k N`), the least-squares coefficients over
/// it and the residual `r^k = y - Phi_Lambda x_hat`.
#[derive(Clone, Debug)]
pub struct GompState<'a> {
    phi: &'a DenseMatrix,
    y: &'a [f64],
    big_n: usize,
    qr: QrState,
    coeffs: Vec<f64>,
    residual: Vec<f64>,
    residual_norm: f64,
    chosen: Vec<bool>,
    k: usize,
}

impl<'a> GompState<'a> {
    pub fn new(phi: &'a DenseMatrix, y: &'a [f64], big_n: usize) -> Result<Self> {
        if y.len() != phi.rows() {
            return Err(Error::dims(format!(
                "measurement has length {}, sensing matrix has {} rows",
                y.len(),
                phi.rows()
            )));
        }
        if big_n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        Ok(Self {
            phi,
            y,
            big_n,
            qr: QrState::empty(phi.rows()),
            coeffs: Vec::new(),
            residual: y.to_vec(),
            residual_norm: norm2(y),
            chosen: vec![false; phi.cols()],
            k: 0,
        })
    }

    pub fn iteration(&self) -> usize {
        self.k
    }

    pub fn support(&self) -> &[usize] {
        self.qr.col_ids()
    }

    pub fn is_selected(&self, j: usize) -> bool {
        self.chosen[j]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn residual(&self) -> &[f64] {
        &self.residual
    }

    pub fn residual_norm(&self) -> f64 {
        self.residual_norm
    }

    pub fn qr(&self) -> &QrState {
        &self.qr
    }

    /// `Phi' r^k`.
    pub fn correlations(&self) -> Vec<f64> {
        self.phi
            .tr_mul_vec(&self.residual)
            .expect("residual length equals row count")
    }

    /// Number of columns not yet in the support.
    pub fn remaining(&self) -> usize {
        self.chosen.len() - self.qr.len()
    }

    /// One identification / augmentation / estimation / residual update
    /// round. On `Err` (rank deficiency) the state is unchanged.
    pub fn step(&mut self) -> Result<IterationTrace> {
        if self.remaining() < self.big_n {
            return Err(Error::invalid(format!(
                "only {} unselected columns remain, need {}",
                self.remaining(),
                self.big_n
            )));
        }
        let selected = select_top_n_masked(&self.correlations(), &self.chosen, self.big_n);
        let qr = self.qr.append_columns(self.phi, &selected)?;
        let coeffs = qr.solve(self.y)?.into_inner();
        let r = residual(self.phi, &qr, &coeffs, self.y)?.into_inner();

        for &j in &selected {
            self.chosen[j] = true;
        }
        self.k += 1;
        self.qr = qr;
        self.coeffs = coeffs;
        self.residual_norm = norm2(&r);
        self.residual = r;
        Ok(IterationTrace {
            k: self.k,
            selected,
            residual_norm: self.residual_norm,
            support_size: self.qr.len(),
        })
    }

    /// Full-length estimate, zero off the support.
    pub fn estimate(&self) -> Vec<f64> {
        let mut x = vec![0.0; self.phi.cols()];
        for (&j, &c) in self.qr.col_ids().iter().zip(&self.coeffs) {
            x[j] = c;
        }
        x
    }
}

/// Generalized orthogonal matching pursuit.
///
/// Stops when `||r^k||_2 <= epsilon`, after `cfg.iteration_cap(m)`
/// iterations, or when a selected column is linearly dependent on the current
/// support (reported as `converged = false`).
pub fn gomp_recover(phi: &DenseMatrix, y: &[f64], cfg: &RecoveryConfig) -> Result<RecoveryResult> {
    cfg.validate()?;
    let mut state = GompState::new(phi, y, cfg.big_n)?;
    let eps = cfg.epsilon.threshold(state.residual_norm());
    let cap = cfg.iteration_cap(phi.rows());
    let mut traces = Vec::new();

    let stop_reason = loop {
        if state.residual_norm() <= eps {
            break StopReason::ResidualBelowEpsilon;
        }
        if state.iteration() >= cap {
            break StopReason::IterationCap;
        }
        if state.remaining() < cfg.big_n {
            break StopReason::ColumnsExhausted;
        }
        match state.step() {
            Ok(t) => traces.push(t),
            Err(Error::RankDeficient { .. }) => break StopReason::RankDeficient,
            Err(e) => return Err(e),
        }
    };

    let iterations = traces.len();
    let modeled_flops = flop_model(cfg.big_n, phi.rows(), phi.cols(), iterations).total_exact;
    Ok(RecoveryResult {
        support_estimate: state.support().to_vec(),
        x_hat: DenseVector::new(state.estimate())?,
        traces,
        converged: stop_reason == StopReason::ResidualBelowEpsilon,
        stop_reason,
        modeled_flops,
        flags: Vec::new(),
    })
}

/// Orthogonal matching pursuit: [`gomp_recover`] with one index per iteration.
pub fn omp_recover(
    phi: &DenseMatrix,
    y: &[f64],
    sparsity_k: usize,
    epsilon: Epsilon,
) -> Result<RecoveryResult> {
    let cfg = RecoveryConfig::new(1, sparsity_k)?.with_epsilon(epsilon);
    gomp_recover(phi, y, &cfg)
}
