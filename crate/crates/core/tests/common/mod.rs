#![allow(dead_code)]

use kratio::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform values in `1..=max_value`, `n` drawn from `n_range`.
pub fn random_instance(rng: &mut ChaCha8Rng, n_range: std::ops::RangeInclusive<usize>, max_value: u64, k: usize) -> Instance {
    let n = rng.gen_range(n_range);
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(1..=max_value)).collect();
    Instance::from_unsorted(values, k).expect("generated instance is valid")
}

pub fn scaled(instance: &Instance, c: u64) -> Instance {
    Instance::from_unsorted(instance.values().iter().map(|v| v * c).collect(), instance.k()).unwrap()
}
