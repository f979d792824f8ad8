//! Entropy sources.
//!
//! Every randomized operation in this crate takes `&mut impl RngCore`. The
//! deterministic expansion used for reproducible vectors is ChaCha20 keyed by
//! a 32-byte seed; production callers should use [`from_entropy`].

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type DeterministicRng = ChaCha20Rng;

/// Whether tooling built on this crate may honor caller-supplied seeds.
pub const SEEDING_ENABLED: bool = cfg!(feature = "insecure-test-mode");

pub fn from_seed(seed: [u8; 32]) -> DeterministicRng {
    ChaCha20Rng::from_seed(seed)
}

/// A ChaCha20 generator keyed from the operating system.
pub fn from_entropy() -> DeterministicRng {
    ChaCha20Rng::from_entropy()
}

/// Independent sub-stream `stream` of the generator keyed by `seed`.
///
/// Used to give each block of a multi-block message its own error vector
/// while keeping the result independent of scheduling order.
pub fn substream(seed: [u8; 32], stream: u64) -> DeterministicRng {
    let mut rng = ChaCha20Rng::from_seed(seed);
    rng.set_stream(stream);
    rng
}
