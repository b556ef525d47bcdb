//! Per-query random number streams.
//!
//! Every stream is a xoshiro256++ generator. A stream for query `id` under a
//! run seed `seed` is seeded with [`stream_seed`], a SplitMix64-style mix of
//! the pair, so the draw sequence of a query depends only on `(seed, id)`.
//! This makes the sequential and interleaved executors, and any worker
//! count, consume identical randomness per query.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the stream `stream_id` under the global seed `seed`.
#[inline]
pub fn stream_seed(seed: u64, stream_id: u64) -> u64 {
    mix64(mix64(seed).wrapping_add(stream_id.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

/// Uniform real in `[0, 1)` with 52 bits of resolution, derived purely from
/// `(seed, stream_id, salt)`. Used for per-edge synthetic attributes.
#[inline]
pub fn hashed_unit(seed: u64, stream_id: u64, salt: u64) -> f64 {
    let h = mix64(stream_seed(seed ^ salt.wrapping_mul(GOLDEN_GAMMA), stream_id));
    (h >> 12) as f64 * (1.0 / (1u64 << 52) as f64)
}

/// A single-owner random stream.
#[derive(Clone, Debug)]
pub struct RngStream {
    inner: Xoshiro256PlusPlus,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { inner: Xoshiro256PlusPlus::seed_from_u64(seed) }
    }

    /// Stream for one walk query.
    pub fn for_query(global_seed: u64, query_id: u64) -> Self {
        Self::new(stream_seed(global_seed, query_id))
    }

    /// Uniform integer in `[0, n)`. `n` must be positive.
    #[inline]
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.inner.random_range(0..n as u64) as usize
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        self.inner.random::<f64>()
    }

    /// Uniform real in `[0, bound)`.
    ///
    /// The product is clamped below `bound` so rounding never produces the
    /// excluded endpoint.
    #[inline]
    pub fn below(&mut self, bound: f64) -> f64 {
        let y = self.unit() * bound;
        if y < bound {
            y
        } else {
            bound.next_down().max(0.0)
        }
    }
}
