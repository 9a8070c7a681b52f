//! Sparse signal recovery with generalized orthogonal matching pursuit (gOMP).
//!
//! The crate is split into four layers:
//!
//! - [`linalg`]: dense matrices and vectors, reproducible Gaussian sensing
//!   matrices, and an incrementally grown modified Gram-Schmidt QR with
//!   recycled least-squares solves.
//! - [`recovery`]: the gOMP iteration (OMP is the `N = 1` case) and a CoSaMP
//!   baseline.
//! - [`analysis`]: brute-force restricted isometry constants, the sufficient
//!   recovery thresholds, per-iteration correlation bound checks and the
//!   flop model.
//! - [`bench`]: the Monte Carlo harness that sweeps sparsity and aggregates
//!   exact-recovery frequencies, iteration counts and modeled flops.
//!
//! ```
//! use spgomp::linalg::gaussian_sensing_matrix;
//! use spgomp::recovery::{gomp_recover, RecoveryConfig, SparseSignal};
//!
//! let phi = gaussian_sensing_matrix(64, 128, 7);
//! let x = SparseSignal::new(128, vec![3, 40, 99], vec![1.0, -2.0, 0.5]).unwrap();
//! let y = phi.mul_vec(&x.to_dense()).unwrap();
//! let cfg = RecoveryConfig::new(2, 3).unwrap();
//! let result = gomp_recover(&phi, &y, &cfg).unwrap();
//! assert!(spgomp::recovery::exact_recovery(&x, &result, 1e-4).unwrap());
//! ```

pub mod analysis;
pub mod bench;
mod error;
pub mod linalg;
pub mod recovery;

pub use error::{Error, Result};
