//! Deterministic RNG streams.
//!
//! Every randomized unit of work (a retry attempt, a sampling trial, a scale of
//! the construction pipeline) draws from its own ChaCha8 stream whose 64-bit
//! seed is derived from the master seed and the unit's identity:
//!
//! ```text
//! stream_seed(master, tag, index) =
//!     splitmix64(master ^ splitmix64(fnv1a64(tag) ^ index))
//! ```
//!
//! where `fnv1a64` is FNV-1a over the tag's UTF-8 bytes and `splitmix64` is the
//! standard SplitMix64 finalizer. Results therefore depend only on
//! `(master_seed, tag, index)` — never on worker count or scheduling — and the
//! rule is simple enough to reproduce byte-identical outputs from another
//! language given the same generator.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn splitmix64(z: u64) -> u64 {
    let mut z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xCBF2_9CE4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    h
}

/// 64-bit seed for the stream identified by `(tag, index)` under `master`.
pub fn stream_seed(master: u64, tag: &str, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(fnv1a64(tag.as_bytes()) ^ index))
}

/// ChaCha8 generator for the stream identified by `(tag, index)` under `master`.
pub fn stream_rng(master: u64, tag: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(stream_seed(master, tag, index))
}
