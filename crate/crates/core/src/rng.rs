//! Seeded random streams.
//!
//! Every stochastic routine in the crate draws from [`SampleRng`], a ChaCha8
//! stream keyed by a 64-bit seed. Independent substreams (one per worker, one
//! per generator attempt, ...) are keyed by [`mix`]ing the user seed with the
//! substream index through SplitMix64, so a fixed `(seed, index)` pair always
//! yields the same sequence regardless of how many other substreams exist.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SampleRng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// SplitMix64 finalizer.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives the key of substream `index` from `seed`: `splitmix64(seed ^ splitmix64(index))`.
pub fn mix(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

pub fn substream(seed: u64, index: u64) -> SampleRng {
    SampleRng::seed_from_u64(mix(seed, index))
}
