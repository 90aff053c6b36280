//! Seed derivation. One 64-bit root seed; trial `i` reads stream `i` of the
//! ChaCha8 generator seeded with it, so any single trial can be replayed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}
