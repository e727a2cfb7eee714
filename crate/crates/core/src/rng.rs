//! The single deterministic generator used across the crate.
//!
//! Every randomized operation takes a `u64` seed and builds a
//! [`ChaCha8Rng`] from it with `seed_from_u64`. Independent trials derive
//! their stream as `seed + trial_index` (wrapping). ChaCha8 output is
//! specified bit-for-bit, so replays agree across platforms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn trial(seed: u64, index: u64) -> Rng {
    from_seed(seed.wrapping_add(index))
}
