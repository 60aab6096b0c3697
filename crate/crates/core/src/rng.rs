//! Seedable, splittable randomness.
//!
//! Every stochastic operation in this crate takes an explicit `u64` seed and
//! derives its generator here, so whole experiments replay bit-exactly.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Root generator for a seed.
pub fn root(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream derived from `(seed, tag)`. Streams with distinct tags
/// never overlap, which is what lets trials run concurrently and still
/// reproduce.
pub fn stream(seed: u64, tag: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(tag);
    rng
}

/// Stable 64-bit content hash (FNV-1a). Used to derive per-input streams;
/// `std`'s default hasher is randomized per process and would break replay.
pub fn fnv1a(bytes: impl IntoIterator<Item = u64>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in bytes {
        for b in w.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}
