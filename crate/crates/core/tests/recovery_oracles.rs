mod common;

use common::{columns, lstsq, max_abs_diff, naive_cosamp, naive_omp, rel_err};
use proptest::prelude::*;
use spgomp::bench::{generate_signal, SignalKind};
use spgomp::linalg::{gaussian_sensing_matrix, GaussianStream};
use spgomp::recovery::{
    cosamp_recover, exact_recovery, gomp_recover, omp_recover, Epsilon, RecoveryConfig,
    StopReason,
};

#[test]
fn gomp_matches_pseudoinverse_on_true_support() {
    let phi = gaussian_sensing_matrix(16, 32, 21);
    let x = generate_signal(32, 3, SignalKind::Gaussian, &mut GaussianStream::from_seed(22)).unwrap();
    let y = phi.mul_vec(&x.to_dense()).unwrap();
    let cfg = RecoveryConfig::new(2, 3).unwrap().with_epsilon(Epsilon::Absolute(1e-6));
    let res = gomp_recover(&phi, &y, &cfg).unwrap();

    let covered = x.support().iter().all(|j| res.support_estimate.contains(j));
    assert!(covered, "support {:?} misses part of {:?}", res.support_estimate, x.support());
    let oracle_t = lstsq(&columns(&phi, x.support()), &y);
    let mut oracle = vec![0.0; 32];
    for (&j, &c) in x.support().iter().zip(&oracle_t) {
        oracle[j] = c;
    }
    assert!(max_abs_diff(&res.x_hat, &oracle) <= 1e-8);
}

#[test]
fn omp_agrees_with_naive_omp() {
    let phi = gaussian_sensing_matrix(32, 64, 31);
    let x = generate_signal(64, 4, SignalKind::Pam, &mut GaussianStream::from_seed(32)).unwrap();
    let y = phi.mul_vec(&x.to_dense()).unwrap();
    let ours = omp_recover(&phi, &y, 4, Epsilon::default()).unwrap();
    let naive = naive_omp(&phi, &y, 4, 1e-6);
    let ours_ok = exact_recovery(&x, &ours, 1e-4).unwrap();
    let naive_ok = rel_err(&naive, &x.to_dense()) <= 1e-4;
    assert_eq!(ours_ok, naive_ok);
    assert!(max_abs_diff(&ours.x_hat, &naive) <= 1e-8);
}

#[test]
fn cosamp_agrees_with_naive_cosamp() {
    let phi = gaussian_sensing_matrix(64, 128, 41);
    let x = generate_signal(128, 5, SignalKind::Gaussian, &mut GaussianStream::from_seed(42)).unwrap();
    let y = phi.mul_vec(&x.to_dense()).unwrap();
    let ours = cosamp_recover(&phi, &y, 5, 5, Epsilon::default()).unwrap();
    let naive = naive_cosamp(&phi, &y, 5, 5, 1e-6);
    assert_eq!(
        exact_recovery(&x, &ours, 1e-4).unwrap(),
        rel_err(&naive, &x.to_dense()) <= 1e-4
    );
}

#[test]
fn cosamp_agrees_with_naive_over_many_instances() {
    let mut disagreements = 0;
    for seed in 0..40u64 {
        let k = 4 + (seed as usize % 10);
        let phi = gaussian_sensing_matrix(48, 96, 500 + seed);
        let x = generate_signal(96, k, SignalKind::Gaussian, &mut GaussianStream::from_seed(900 + seed)).unwrap();
        let y = phi.mul_vec(&x.to_dense()).unwrap();
        let ours = exact_recovery(&x, &cosamp_recover(&phi, &y, k, k, Epsilon::default()).unwrap(), 1e-4).unwrap();
        let naive = rel_err(&naive_cosamp(&phi, &y, k, k, 1e-6), &x.to_dense()) <= 1e-4;
        disagreements += usize::from(ours != naive);
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn omp_is_gomp_with_one_pick() {
    for seed in 0..20u64 {
        let phi = gaussian_sensing_matrix(24, 60, seed);
        let x = generate_signal(60, 6, SignalKind::Pam, &mut GaussianStream::from_seed(seed + 77)).unwrap();
        let y = phi.mul_vec(&x.to_dense()).unwrap();
        let a = omp_recover(&phi, &y, 6, Epsilon::default()).unwrap();
        let b = gomp_recover(&phi, &y, &RecoveryConfig::new(1, 6).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn stalled_recovery_reports_not_converged() {
    // 15 nonzeros but only 4 x 3 = 12 picks allowed: the iteration cap binds.
    let phi = gaussian_sensing_matrix(20, 80, 3);
    let x = generate_signal(80, 15, SignalKind::Gaussian, &mut GaussianStream::from_seed(4)).unwrap();
    let y = phi.mul_vec(&x.to_dense()).unwrap();
    let res = gomp_recover(&phi, &y, &RecoveryConfig::new(3, 4).unwrap()).unwrap();
    assert!(!res.converged);
    assert_eq!(res.stop_reason, StopReason::IterationCap);
    assert_eq!(res.iterations(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn trace_invariants(
        seed in 0u64..10_000,
        big_n in 1usize..5,
        k in 1usize..12,
        pam in any::<bool>(),
    ) {
        let (m, n) = (32, 64);
        let phi = gaussian_sensing_matrix(m, n, seed);
        let kind = if pam { SignalKind::Pam } else { SignalKind::Gaussian };
        let x = generate_signal(n, k, kind, &mut GaussianStream::from_seed(seed ^ 0xABCD)).unwrap();
        let y = phi.mul_vec(&x.to_dense()).unwrap();
        let cfg = RecoveryConfig::new(big_n, k).unwrap();
        let res = gomp_recover(&phi, &y, &cfg).unwrap();

        // no reselection, |Lambda^k| = kN
        let mut seen = std::collections::HashSet::new();
        for t in &res.traces {
            prop_assert_eq!(t.selected.len(), big_n);
            prop_assert_eq!(t.support_size, t.k * big_n);
            for &j in &t.selected {
                prop_assert!(seen.insert(j));
            }
        }
        prop_assert!(res.iterations() <= k.min(m / big_n));

        // residual norms never grow (up to rounding at the scale of ||y||)
        let y_norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let mut prev = y_norm;
        for t in &res.traces {
            prop_assert!(t.residual_norm <= prev + 1e-12 * y_norm);
            prev = t.residual_norm;
        }

        // x_hat vanishes off the support estimate
        for (j, v) in res.x_hat.iter().enumerate() {
            if !res.support_estimate.contains(&j) {
                prop_assert_eq!(*v, 0.0);
            }
        }

        // superset recovery
        if x.support().iter().all(|j| res.support_estimate.contains(j)) {
            prop_assert!(max_abs_diff(&res.x_hat, &x.to_dense()) <= 1e-8);
        }
    }
}
