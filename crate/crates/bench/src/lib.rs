//! Seeded inputs shared by the benchmarks.

use fockmult_core::sample::random_polynomial;
use fockmult_core::{MonoidSpec, Polynomial};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A dense random symbol on the level-`level` window of `spec`.
pub fn symbol(spec: &MonoidSpec, level: usize, seed: u64) -> Polynomial {
    let window = spec.window(level).expect("fixture window fits the default capacity");
    random_polynomial(&window, &mut ChaCha8Rng::seed_from_u64(seed))
}
