use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::DenseMatrix;

/// Reproducible source of standard normal deviates.
///
/// The generator is ChaCha8 seeded through `SeedableRng::seed_from_u64`. Each
/// uniform draw takes the top 53 bits of one `next_u64` output. Normals come
/// from the Box-Muller transform, with `ln`, `sin` and `cos` evaluated by the
/// pure-Rust `libm` port so the stream does not depend on the platform math
/// library. Deviates are produced in pairs; the sine branch is served on the
/// next call.
#[derive(Clone, Debug)]
pub struct GaussianStream {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

const TWO_POW_M53: f64 = 1.0 / (1u64 << 53) as f64;

impl GaussianStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn next_uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * TWO_POW_M53
    }

    /// Standard normal deviate.
    pub fn next_normal(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps the logarithm finite.
        let u1 = 1.0 - self.next_uniform();
        let u2 = self.next_uniform();
        let radius = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * libm::sin(theta));
        radius * libm::cos(theta)
    }

    /// Uniform integer in `0..bound` by rejection sampling.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "bound must be positive");
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.rng.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }

    pub(crate) fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

/// `m x n` matrix with i.i.d. `N(0, 1/m)` entries, filled column by column
/// from [`GaussianStream::from_seed`]`(seed)`.
pub fn gaussian_sensing_matrix(m: usize, n: usize, seed: u64) -> DenseMatrix {
    assert!(m >= 1 && n >= 1, "sensing matrix needs m >= 1 and n >= 1");
    let mut stream = GaussianStream::from_seed(seed);
    let scale = 1.0 / (m as f64).sqrt();
    let data = (0..m * n).map(|_| stream.next_normal() * scale).collect();
    DenseMatrix::from_col_major(m, n, data).expect("Box-Muller output is finite")
}
