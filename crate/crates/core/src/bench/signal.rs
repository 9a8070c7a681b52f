use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::GaussianStream;
use crate::recovery::SparseSignal;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignalKind {
    /// Standard normal nonzeros.
    Gaussian,
    /// Nonzeros drawn uniformly from `{-3, -1, 1, 3}`.
    Pam,
}

impl fmt::Display for SignalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignalKind::Gaussian => "gaussian",
            SignalKind::Pam => "pam",
        })
    }
}

impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gaussian" => Ok(SignalKind::Gaussian),
            "pam" => Ok(SignalKind::Pam),
            other => Err(Error::invalid(format!("unknown signal kind {other:?}"))),
        }
    }
}

const PAM_LEVELS: [f64; 4] = [-3.0, -1.0, 1.0, 3.0];

/// `K`-sparse signal with a uniformly random support.
///
/// The support is drawn first (`rand::seq::index::sample` on the stream's
/// ChaCha8 generator), then one value per support index in ascending index
/// order.
pub fn generate_signal(
    n: usize,
    sparsity_k: usize,
    kind: SignalKind,
    stream: &mut GaussianStream,
) -> Result<SparseSignal> {
    if sparsity_k == 0 || sparsity_k > n {
        return Err(Error::invalid(format!("sparsity {sparsity_k} must lie in 1..={n}")));
    }
    let mut support = rand::seq::index::sample(stream.rng_mut(), n, sparsity_k).into_vec();
    support.sort_unstable();
    let values = support
        .iter()
        .map(|_| match kind {
            SignalKind::Gaussian => loop {
                let v = stream.next_normal();
                if v != 0.0 {
                    break v;
                }
            },
            SignalKind::Pam => PAM_LEVELS[stream.next_below(4) as usize],
        })
        .collect();
    SparseSignal::new(n, support, values)
}
