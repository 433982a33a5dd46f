//! Seed derivation.
//!
//! Every random draw comes from a ChaCha8 generator keyed by a 64-bit seed and
//! selected by a stream id, so each (trial, purpose) pair gets an independent
//! and reproducible sequence regardless of scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Stream ids for the independent draws within one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Labels = 1,
    Matrix = 2,
    SideInfo = 3,
    /// Deterministic start vectors for iterative eigensolvers.
    Solver = 4,
}

/// A master seed paired with a stream selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedStream {
    pub seed: u64,
    pub stream: u64,
}

impl SeedStream {
    pub fn new(seed: u64, purpose: Purpose) -> Self {
        Self {
            seed,
            stream: purpose as u64,
        }
    }

    pub fn rng(self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// SplitMix64 finalizer; a bijection on `u64` with good avalanche.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-trial seed derived from the master seed, the problem size and the
/// trial index.
pub fn trial_seed(master: u64, n: usize, trial: usize) -> u64 {
    mix64(mix64(master ^ mix64(n as u64)) ^ (trial as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Convenience: a generator for `purpose` under `seed`.
pub fn stream(seed: u64, purpose: Purpose) -> ChaCha8Rng {
    SeedStream::new(seed, purpose).rng()
}
