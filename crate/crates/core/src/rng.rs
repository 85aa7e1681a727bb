//! Counter-based deterministic randomness.
//!
//! A `SeedStream` is a (seed, path) pair. Forking appends to the path, so two
//! call sites never share state and results do not depend on evaluation order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::PrimeField;

#[derive(Debug, Clone)]
pub struct SeedStream {
    seed: u64,
    path: u64,
    rng: ChaCha8Rng,
}

fn mix(a: u64, b: u64) -> u64 {
    // splitmix64 finalizer over the pair
    let mut z = a ^ b.wrapping_mul(0x9E37_79B9_7F4A_7C15).rotate_left(17);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl SeedStream {
    pub fn new(seed: u64) -> Self {
        Self::at(seed, 0)
    }

    fn at(seed: u64, path: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(path);
        Self { seed, path, rng }
    }

    /// Independent child stream identified by `label`.
    pub fn fork(&self, label: u64) -> Self {
        Self::at(self.seed, mix(self.path, label.wrapping_add(1)))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn element(&mut self, f: PrimeField) -> u32 {
        self.rng.gen_range(0..f.p())
    }

    pub fn vector(&mut self, f: PrimeField, n: usize) -> Vec<u32> {
        (0..n).map(|_| self.element(f)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forks_are_reproducible_and_distinct() {
        let s = SeedStream::new(3);
        let a: Vec<u64> = (0..4).map({
            let mut t = s.fork(1);
            move |_| t.next_u64()
        }).collect();
        let b: Vec<u64> = (0..4).map({
            let mut t = s.fork(1);
            move |_| t.next_u64()
        }).collect();
        let mut c = s.fork(2);
        assert_eq!(a, b);
        assert_ne!(a[0], c.next_u64());
    }
}
