//! Seed discipline shared by every randomized routine in the crate.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`). A run is
//! identified by a 64-bit `seed`; independent sub-computations of the same run
//! (trials, ensemble members) draw from distinct ChaCha streams of that seed,
//! so each one can be reproduced in isolation and in any order.
//!
//! Integer ranges are always sampled as `u64` so the output does not depend on
//! the platform's `usize` width.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream used by [`crate::ran::Ran::generate`].
pub const GENERATE_STREAM: u64 = 0;

/// Generator for stream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform index in `0..len`. `len` must be non-zero.
#[inline]
pub fn uniform_index(rng: &mut SimRng, len: usize) -> usize {
    debug_assert!(len > 0);
    rng.random_range(0..len as u64) as usize
}
