//! Reproducible random streams: one ChaCha8 key per (seed, domain) and one
//! counter stream per index, so draws never depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Separates the uses of a single user seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Domain {
    Coordinates = 1,
    Count = 2,
    Replicate = 3,
    Typical = 4,
}

pub fn stream(seed: u64, domain: Domain, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(domain as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Seed of replicate `rep` of an experiment run with `seed`.
pub fn replicate_seed(seed: u64, rep: u64) -> u64 {
    use rand::RngCore;
    stream(seed, Domain::Replicate, rep).next_u64()
}
