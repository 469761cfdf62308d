//! Seed derivation.
//!
//! Every random draw in the crate comes from a [`ChaCha8Rng`] seeded by a
//! single `u64`. Per-trial seeds are derived from a master seed by pushing
//! the `(master, index)` pair through the SplitMix64 finalizer, so a trial's
//! stream depends only on its coordinates and never on scheduling order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used for all sampling.
pub type SimRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 output function; a bijective avalanche mixer on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives an independent child seed from `(seed, index)`.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    mix64(mix64(seed).wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Seed for trial `trial` at sweep grid point `point`.
pub fn trial_seed(master: u64, point: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(master, point as u64), trial as u64)
}

/// Opens a generator stream for `seed`.
pub fn stream(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}
