//! Deterministic seed derivation.
//!
//! All randomness in the crate flows from one root seed. Subsystems derive
//! their own streams by hashing a label and an index into the root, so runs
//! are reproducible regardless of call order.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; stable across platforms.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derive a child seed from `root` for the stream named `label` at `index`.
pub fn subseed(root: u64, label: &str, index: u64) -> u64 {
    let mut h = mix(root ^ 0x6a09e667f3bcc908);
    for &b in label.as_bytes() {
        h = mix(h ^ b as u64);
    }
    mix(h ^ index)
}

/// A ChaCha stream seeded from a derived seed.
pub fn stream(root: u64, label: &str, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(subseed(root, label, index))
}

/// Order-independent hash of a u64 sequence, for state digests.
pub fn fold_hash(items: impl IntoIterator<Item = u64>) -> u64 {
    let mut acc = 0u64;
    for x in items {
        acc = acc.wrapping_add(mix(x));
    }
    acc
}
