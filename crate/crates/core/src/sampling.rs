//! Deterministic integer sampling from a raw RNG stream.
//!
//! Challenge derivation replays a seeded generator on both sides of the wire,
//! so the byte-to-sample path must be pinned by this crate rather than by a
//! random-crate version. Both helpers consume `next_u64` words and use plain
//! rejection sampling; given the same stream they produce the same values on
//! every platform.

use rand::RngCore;

/// Uniform integer in `[-height, height]`.
///
/// # Panics
/// Panics if `height == 0`; a degenerate all-zero range is never meaningful
/// for the callers (they sample basis coordinates and matrix entries).
pub fn uniform_int<R: RngCore + ?Sized>(rng: &mut R, height: u32) -> i64 {
    assert!(height >= 1, "sampling height must be at least 1");
    let span = 2 * u64::from(height) + 1;
    let limit = u64::MAX - u64::MAX % span;
    loop {
        let word = rng.next_u64();
        if word < limit {
            return (word % span) as i64 - i64::from(height);
        }
    }
}

/// Uniform bit.
pub fn uniform_bit<R: RngCore + ?Sized>(rng: &mut R) -> bool {
    rng.next_u64() & 1 == 1
}
