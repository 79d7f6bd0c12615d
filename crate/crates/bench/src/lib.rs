//! Shared fixtures for the benchmark suite: deterministic key pairs and
//! sample elements, so every run measures the same instances.

use csazkp::{keygen, AlgElement, Algebra, KeyPair, Variant};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub const HEIGHT: u32 = 3;
pub const BOUND: u64 = 64;

/// A key pair generated from a seed derived from the variant and size, so
/// benchmarks compare like with like across runs.
pub fn fixture_pair(variant: Variant, k: u32) -> KeyPair {
    let seed = 0xBE9C_0000 + u64::from(k) * 8 + variant as u64;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    keygen(variant, k, HEIGHT, BOUND, &mut rng).expect("fixture keygen succeeds")
}

/// Deterministic sample elements of an algebra, for element-level benches.
pub fn fixture_elements(a: &Algebra, n: usize) -> Vec<AlgElement> {
    let mut rng = ChaCha20Rng::seed_from_u64(0xE1E3_0000 + a.dim() as u64);
    (0..n).map(|_| a.random_element(HEIGHT, &mut rng)).collect()
}
