//! Counter-based pseudo-random numbers.
//!
//! Draw `i` of stream `seed` is `mix(seed + (i + 1) * γ)` where
//! `γ = 0x9E3779B97F4A7C15` and `mix` is the SplitMix64 finalizer:
//!
//! ```text
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! z =  z ^ (z >> 31)
//! ```
//!
//! (all arithmetic wrapping modulo 2^64). Draws are random access, so any
//! candidate of a seeded search can be regenerated in isolation and the
//! sequence does not depend on how work is split between threads.
//! A draw is mapped to `[0, bound)` by `(draw * bound) >> 64`.

const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
pub fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[inline]
pub fn draw(seed: u64, counter: u64) -> u64 {
    mix(seed.wrapping_add(counter.wrapping_add(1).wrapping_mul(GAMMA)))
}

/// Draw `counter` mapped to `[0, bound)`; `bound` must be at most `2^64`.
#[inline]
pub fn draw_below(seed: u64, counter: u64, bound: u128) -> u128 {
    debug_assert!(bound > 0 && bound <= 1u128 << 64);
    (draw(seed, counter) as u128 * bound) >> 64
}
