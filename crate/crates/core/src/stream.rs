//! Per-trial random streams.
//!
//! Every trial draws from ChaCha8 streams keyed by the 256-bit value
//!
//! ```text
//! key = master_seed (u64 LE) ‖ trial (u64 LE) ‖ purpose tag (u64 LE) ‖ 0u64
//! ```
//!
//! The key is injective in `(master_seed, trial, purpose)`, so frames, SLM
//! sequences and partitions never share a stream, and a trial's draws do not
//! depend on which other trials ran or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

/// What a stream is used for. The discriminant is the key's purpose tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[repr(u64)]
pub enum Purpose {
    FrameBits = 1,
    SlmSequences = 2,
    Partition = 3,
}

pub fn trial_stream(master_seed: u64, trial: u64, purpose: Purpose) -> StreamRng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8..16].copy_from_slice(&trial.to_le_bytes());
    key[16..24].copy_from_slice(&(purpose as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}
