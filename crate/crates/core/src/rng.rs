//! Seeded random streams.
//!
//! Every run owns exactly one [`RngStream`]. Streams for an experiment are
//! derived from a master seed plus (algorithm slot, run index), so any single
//! run can be replayed on its own and runs can execute in any order.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Scalar;

#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed, inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Stream for run `run` of algorithm slot `slot` under `master`.
    pub fn derive(master: u64, slot: u64, run: u64) -> Self {
        Self::new(splitmix(splitmix(splitmix(master) ^ slot) ^ run))
    }

    /// Seed this stream was built from (after derivation).
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform_unit<T: Scalar>(&mut self) -> T {
        T::sample_unit(self)
    }

    pub fn standard_normal<T: Scalar>(&mut self) -> T {
        T::sample_standard_normal(self)
    }

    /// Uniform index in `0..n`. `n` must be positive.
    pub fn index(&mut self, n: usize) -> usize {
        self.random_range(0..n)
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

// SplitMix64 finalizer.
fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
