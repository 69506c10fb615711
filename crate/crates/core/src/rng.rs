//! Seed derivation and independent random streams.
//!
//! Every run is driven by a [`ChaCha8Rng`]. Trial seeds are derived from a
//! master seed by a SplitMix64 mix so that cells of an experiment grid get
//! unrelated streams, and each trial splits into named sub-streams so that
//! adding a metric never shifts the draws of the protocol run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use rand_chacha::ChaCha8Rng as StreamRng;

/// Purpose-tagged sub-streams of one trial seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Stream {
    Graph = 1,
    Start = 2,
    Protocol = 3,
    Metrics = 4,
    Forced = 5,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for trial `trial` of size `size` under `master`.
pub fn trial_seed(master: u64, size: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ size) ^ trial)
}

/// A generator for `stream` of the given trial seed.
pub fn stream(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

/// A generator seeded directly, for tests and one-off runs.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
