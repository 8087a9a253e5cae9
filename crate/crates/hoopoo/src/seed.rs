//! Deterministic seed derivation.
//!
//! A single master seed fans out into independent streams keyed by a fixed
//! tag plus integer coordinates (run index, instance identity, point bits,
//! occurrence index). Streams derived this way do not depend on the order in
//! which they are first used, which keeps replays bit-identical regardless
//! of scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer. Stable across platforms and releases.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes `base` with a word sequence into a single stream seed.
pub fn derive_seed(base: u64, words: &[u64]) -> u64 {
    let mut acc = splitmix64(base ^ 0xA076_1D64_78BD_642F);
    for &w in words {
        acc = splitmix64(acc ^ splitmix64(w));
    }
    acc
}

/// A ChaCha stream seeded from `derive_seed(base, words)`.
pub fn rng_from(base: u64, words: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, words))
}

/// Domain-separation tags for the streams a run hands out.
pub mod tags {
    /// Per-instance tie-breaking stream.
    pub const INSTANCE: u64 = 0x4953_5452;
    /// Point-keyed reward noise.
    pub const NOISE: u64 = 0x4E4F_4953;
    /// Recommendation draws.
    pub const RECOMMEND: u64 = 0x5245_434F;
    /// Per-run seeds inside an experiment.
    pub const RUN: u64 = 0x5255_4E53;
}
