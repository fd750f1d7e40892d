//! Seed derivation.
//!
//! Every random draw in the crate comes from a ChaCha stream whose seed is a
//! SplitMix64 hash of `(master seed, index, purpose)`. A round's contexts are
//! therefore a pure function of `(seed, t)`, and replication `r` of an
//! experiment always runs on `derive(master, r)` regardless of how many other
//! replications exist or in which order they execute.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Purpose tags separating independent streams keyed by the same `(seed, t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Contexts = 1,
    Noise = 2,
    Parameter = 3,
    Shuffle = 4,
    Policy = 5,
    Replication = 6,
}

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hash of `(seed, index, stream)`.
pub fn derive(seed: u64, index: u64, stream: Stream) -> u64 {
    let a = mix64(seed.wrapping_add(GOLDEN));
    let b = mix64(a ^ index.wrapping_mul(GOLDEN).wrapping_add(stream as u64));
    mix64(b.wrapping_add((stream as u64).wrapping_mul(GOLDEN)))
}

/// Seed for replication `r` of an experiment with master seed `seed`.
pub fn replication_seed(seed: u64, r: usize) -> u64 {
    derive(seed, r as u64, Stream::Replication)
}

pub fn stream_rng(seed: u64, index: u64, stream: Stream) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, index, stream))
}
