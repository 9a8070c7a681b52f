use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::linalg::{gaussian_sensing_matrix, DenseMatrix, GaussianStream};
use crate::recovery::{
    cosamp_recover, exact_recovery, gomp_recover, omp_recover, Epsilon, RecoveryConfig,
    DEFAULT_EXACT_TOL,
};
use crate::{Error, Result};

use super::signal::{generate_signal, SignalKind};

/// Recovery algorithms compared by the harness, ordered by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Cosamp,
    Gomp,
    Omp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Cosamp, Algorithm::Gomp, Algorithm::Omp];

    /// Stable identifier mixed into per-trial seeds.
    pub fn seed_id(self) -> u64 {
        match self {
            Algorithm::Gomp => 1,
            Algorithm::Omp => 2,
            Algorithm::Cosamp => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Cosamp => "cosamp",
            Algorithm::Gomp => "gomp",
            Algorithm::Omp => "omp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gomp" => Ok(Algorithm::Gomp),
            "omp" => Ok(Algorithm::Omp),
            "cosamp" => Ok(Algorithm::Cosamp),
            other => Err(Error::invalid(format!("unknown algorithm {other:?}"))),
        }
    }
}

/// Sensing ensemble used by [`run_trial`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    /// i.i.d. `N(0, 1/m)` entries, fresh per trial.
    #[default]
    Gaussian,
    /// `m x m` identity; a test hook.
    Identity,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub m: usize,
    pub n: usize,
    pub k_values: Vec<usize>,
    /// gOMP picks per iteration.
    pub big_n: usize,
    pub trials: usize,
    pub signal_kind: SignalKind,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    /// Relative error tolerance for exact recovery.
    pub tol: f64,
    pub ensemble: Ensemble,
}

impl Default for BenchConfig {
    /// 128 x 256 Gaussian sensing, `K = 10, 15, ..., 45`, gOMP with `N = 5`,
    /// 200 trials per point.
    fn default() -> Self {
        Self {
            m: 128,
            n: 256,
            k_values: (10..=45).step_by(5).collect(),
            big_n: 5,
            trials: 200,
            signal_kind: SignalKind::Gaussian,
            algorithms: Algorithm::ALL.to_vec(),
            master_seed: 1,
            tol: DEFAULT_EXACT_TOL,
            ensemble: Ensemble::Gaussian,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::invalid("m and n must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials must be at least 1"));
        }
        if self.big_n == 0 {
            return Err(Error::invalid("N must be at least 1"));
        }
        if let Some(&k) = self.k_values.iter().find(|&&k| k == 0 || k > self.m || k > self.n) {
            return Err(Error::invalid(format!(
                "sparsity {k} must lie in 1..={}",
                self.m.min(self.n)
            )));
        }
        if !(self.tol.is_finite() && self.tol >= 0.0) {
            return Err(Error::invalid("tolerance must be finite and >= 0"));
        }
        if self.ensemble == Ensemble::Identity && self.m != self.n {
            return Err(Error::invalid("identity ensemble requires m == n"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub success: bool,
    pub iterations: usize,
    pub modeled_flops: u64,
    pub wall_seconds: f64,
}

/// One SplitMix64 output step.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn mix(state: u64, word: u64) -> u64 {
    splitmix64(state ^ splitmix64(word))
}

/// Seed of one trial: SplitMix64 absorbed over
/// `(master_seed, algorithm id, K, trial_index)`.
///
/// The matrix is drawn from `mix(seed, 0)` and the signal from
/// `mix(seed, 1)`, where `mix(s, w) = splitmix64(s ^ splitmix64(w))`.
pub fn trial_seed(master_seed: u64, algorithm: Algorithm, sparsity_k: usize, trial_index: usize) -> u64 {
    let mut h = splitmix64(master_seed);
    for word in [algorithm.seed_id(), sparsity_k as u64, trial_index as u64] {
        h = mix(h, word);
    }
    h
}

/// Runs one recovery on a freshly drawn instance.
pub fn run_trial(
    cfg: &BenchConfig,
    algorithm: Algorithm,
    sparsity_k: usize,
    trial_index: usize,
) -> Result<TrialOutcome> {
    let seed = trial_seed(cfg.master_seed, algorithm, sparsity_k, trial_index);
    let phi = match cfg.ensemble {
        Ensemble::Gaussian => gaussian_sensing_matrix(cfg.m, cfg.n, mix(seed, 0)),
        Ensemble::Identity => DenseMatrix::identity(cfg.m),
    };
    let mut stream = GaussianStream::from_seed(mix(seed, 1));
    let x = generate_signal(cfg.n, sparsity_k, cfg.signal_kind, &mut stream)?;
    let y = phi.mul_vec(&x.to_dense())?;

    let start = Instant::now();
    let result = match algorithm {
        Algorithm::Gomp => gomp_recover(&phi, &y, &RecoveryConfig::new(cfg.big_n, sparsity_k)?)?,
        Algorithm::Omp => omp_recover(&phi, &y, sparsity_k, Epsilon::default())?,
        Algorithm::Cosamp => cosamp_recover(&phi, &y, sparsity_k, sparsity_k, Epsilon::default())?,
    };
    let wall_seconds = start.elapsed().as_secs_f64();

    Ok(TrialOutcome {
        success: exact_recovery(&x, &result, cfg.tol)?,
        iterations: result.iterations(),
        modeled_flops: result.modeled_flops,
        wall_seconds,
    })
}

/// Aggregate over all trials of one `(algorithm, K)` point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub algorithm: Algorithm,
    #[serde(rename = "K")]
    pub k: usize,
    pub success_frequency: f64,
    pub mean_iterations: f64,
    pub mean_modeled_flops: f64,
    pub mean_wall_seconds: f64,
}

/// One row per `(algorithm, K)`, ordered by algorithm name and then `K`.
pub fn run_sweep(cfg: &BenchConfig) -> Result<Vec<SummaryRow>> {
    cfg.validate()?;
    let mut algorithms = cfg.algorithms.clone();
    algorithms.sort();
    algorithms.dedup();
    let mut ks = cfg.k_values.clone();
    ks.sort_unstable();
    ks.dedup();

    let mut rows = Vec::with_capacity(algorithms.len() * ks.len());
    for &alg in &algorithms {
        for &k in &ks {
            let outcomes = (0..cfg.trials)
                .into_par_iter()
                .map(|t| run_trial(cfg, alg, k, t))
                .collect::<Result<Vec<_>>>()?;
            let trials = cfg.trials as f64;
            let successes = outcomes.iter().filter(|o| o.success).count();
            let iterations: usize = outcomes.iter().map(|o| o.iterations).sum();
            let flops: u128 = outcomes.iter().map(|o| o.modeled_flops as u128).sum();
            let wall: f64 = outcomes.iter().map(|o| o.wall_seconds).sum();
            rows.push(SummaryRow {
                algorithm: alg,
                k,
                success_frequency: successes as f64 / trials,
                mean_iterations: iterations as f64 / trials,
                mean_modeled_flops: flops as f64 / trials,
                mean_wall_seconds: wall / trials,
            });
        }
    }
    Ok(rows)
}

/// Largest `K` whose success frequency for `algorithm` is at least
/// `threshold`.
pub fn critical_sparsity(rows: &[SummaryRow], algorithm: Algorithm, threshold: f64) -> Option<usize> {
    rows.iter()
        .filter(|r| r.algorithm == algorithm && r.success_frequency >= threshold)
        .map(|r| r.k)
        .max()
}
