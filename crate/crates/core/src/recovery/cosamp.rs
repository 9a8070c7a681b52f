use crate::analysis::cosamp_iteration_flops;
use crate::linalg::{axpy, norm2, DenseMatrix, DenseVector, QrState};
use crate::{Error, Result};

use super::select::select_top_n;
use super::types::{Epsilon, IterationTrace, RecoveryFlag, RecoveryResult, StopReason};

/// Compressive sampling matching pursuit, used as a comparison baseline.
///
/// Each iteration takes the `2K` largest proxy entries `|Phi' r|`, merges them
/// with the current support, solves least squares on the merged set, keeps
/// the `K` largest coefficients and recomputes the residual. The loop ends on
/// `||r|| <= epsilon`, after `max_iters` iterations, or when the residual norm
/// fails to decrease (the previous estimate is kept in that case).
///
/// When the merged set has more than `m` columns, or contains columns
/// dependent on earlier ones, the least-squares step admits the current
/// support first and then proxy picks in decreasing order, skipping dependent
/// columns and stopping at `m`.
pub fn cosamp_recover(
    phi: &DenseMatrix,
    y: &[f64],
    sparsity_k: usize,
    max_iters: usize,
    epsilon: Epsilon,
) -> Result<RecoveryResult> {
    let (m, n) = (phi.rows(), phi.cols());
    if y.len() != m {
        return Err(Error::dims(format!(
            "measurement has length {}, sensing matrix has {m} rows",
            y.len()
        )));
    }
    if sparsity_k == 0 || sparsity_k > n {
        return Err(Error::invalid(format!("K = {sparsity_k} must lie in 1..={n}")));
    }

    let mut flags = Vec::new();
    if 3 * sparsity_k > m {
        flags.push(RecoveryFlag::MergeExceedsRows);
    }

    let eps = epsilon.threshold(norm2(y));
    let mut support: Vec<usize> = Vec::new();
    let mut coeffs: Vec<f64> = Vec::new();
    let mut r = y.to_vec();
    let mut r_norm = norm2(y);
    let mut traces = Vec::new();
    let mut flops: u64 = 0;

    let stop_reason = loop {
        if r_norm <= eps {
            break StopReason::ResidualBelowEpsilon;
        }
        if traces.len() >= max_iters {
            break StopReason::IterationCap;
        }

        let proxy = phi.tr_mul_vec(&r)?;
        let omega = select_top_n(&proxy, &[], 2 * sparsity_k);
        let mut qr = QrState::empty(m);
        for id in support.iter().copied().chain(omega) {
            if qr.len() == m {
                break;
            }
            if qr.col_ids().contains(&id) {
                continue;
            }
            match qr.push_column(phi, id) {
                Ok(()) | Err(Error::RankDeficient { .. }) => {}
                Err(e) => return Err(e),
            }
        }
        let b = qr.solve(y)?;
        flops += cosamp_iteration_flops(m, n, sparsity_k, qr.len());

        let mut ranked: Vec<(usize, f64)> = qr.col_ids().iter().copied().zip(b.iter().copied()).collect();
        ranked.sort_by(|a, b| {
            b.1.abs()
                .total_cmp(&a.1.abs())
                .then_with(|| a.0.cmp(&b.0))
        });
        ranked.truncate(sparsity_k);
        ranked.sort_by_key(|p| p.0);

        let mut r_new = y.to_vec();
        for &(j, c) in &ranked {
            axpy(-c, phi.col(j), &mut r_new);
        }
        let new_norm = norm2(&r_new);
        if new_norm.is_nan() || new_norm >= r_norm {
            break StopReason::ResidualStalled;
        }

        support = ranked.iter().map(|p| p.0).collect();
        coeffs = ranked.iter().map(|p| p.1).collect();
        r = r_new;
        r_norm = new_norm;
        traces.push(IterationTrace {
            k: traces.len() + 1,
            selected: support.clone(),
            residual_norm: r_norm,
            support_size: support.len(),
        });
    };

    let mut x_hat = vec![0.0; n];
    for (&j, &c) in support.iter().zip(&coeffs) {
        x_hat[j] = c;
    }
    Ok(RecoveryResult {
        support_estimate: support,
        x_hat: DenseVector::new(x_hat)?,
        traces,
        converged: stop_reason == StopReason::ResidualBelowEpsilon,
        stop_reason,
        modeled_flops: flops,
        flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recovery::{exact_recovery, SparseSignal};

    #[test]
    fn identity_two_sparse() {
        let phi = DenseMatrix::identity(8);
        let x = SparseSignal::new(8, vec![2, 6], vec![1.5, -4.0]).unwrap();
        let y = phi.mul_vec(&x.to_dense()).unwrap();
        let res = cosamp_recover(&phi, &y, 2, 2, Epsilon::default()).unwrap();
        assert!(res.converged);
        assert_eq!(res.iterations(), 1);
        assert!(exact_recovery(&x, &res, 1e-12).unwrap());
        assert!(res.flags.is_empty());
    }

    #[test]
    fn zero_measurement() {
        let phi = DenseMatrix::identity(8);
        let res = cosamp_recover(&phi, &[0.0; 8], 2, 2, Epsilon::default()).unwrap();
        assert!(res.converged);
        assert!(res.support_estimate.is_empty());
        assert!(res.x_hat.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn oversized_merge_is_flagged_and_survives() {
        let phi = crate::linalg::gaussian_sensing_matrix(10, 30, 3);
        let x = SparseSignal::new(30, vec![1, 4, 9, 20], vec![1.0, -1.0, 3.0, 2.0]).unwrap();
        let y = phi.mul_vec(&x.to_dense()).unwrap();
        let res = cosamp_recover(&phi, &y, 4, 4, Epsilon::default()).unwrap();
        assert_eq!(res.flags, vec![RecoveryFlag::MergeExceedsRows]);
        assert!(res.support_estimate.len() <= 4);
        let norms: Vec<f64> = res.traces.iter().map(|t| t.residual_norm).collect();
        assert!(norms.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn rejects_bad_arguments() {
        let phi = DenseMatrix::identity(4);
        assert!(cosamp_recover(&phi, &[0.0; 3], 1, 1, Epsilon::default()).is_err());
        assert!(cosamp_recover(&phi, &[0.0; 4], 0, 1, Epsilon::default()).is_err());
    }
}
