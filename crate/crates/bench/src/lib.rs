//! Deterministic input generators shared by the benchmark targets.

use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use warpmean_core::{Sample, TimeSeries};

/// A random walk with uniform increments in (-1, 1). Walks keep the warping
/// machinery honest: white noise aligns too easily.
pub fn random_series(seed: u64, len: usize) -> TimeSeries {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut level = 0.0;
    let values = (0..len)
        .map(|_| {
            level += rng.gen_range(-1.0..1.0);
            level
        })
        .collect();
    TimeSeries::new(values).expect("finite by construction")
}

pub fn random_sample(seed: u64, members: usize, len: usize) -> Sample {
    let series = (0..members as u64)
        .map(|m| random_series(seed.wrapping_mul(1000).wrapping_add(m), len))
        .collect();
    Sample::new(series).expect("at least one member")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_series(7, 32), random_series(7, 32));
        assert_eq!(random_sample(7, 4, 32), random_sample(7, 4, 32));
        assert_eq!(random_sample(7, 4, 32).len(), 4);
    }
}
