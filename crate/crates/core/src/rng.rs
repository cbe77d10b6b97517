//! Seeded, platform-independent randomness for center selection.
//!
//! The generator and the bounded draw are fixed so that any implementation
//! following the same recipe reproduces the same center sets:
//!
//! * `next_u64`: add `0x9E3779B97F4A7C15` to the 64-bit state (wrapping),
//!   then `z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9`,
//!   `z = (z ^ (z >> 27)) * 0x94D049BB133111EB`, return `z ^ (z >> 31)`.
//! * `below(b)`: let `t = (2^64 - b) mod b`; draw `x` until `x >= t`, then
//!   return `x mod b`.
//! * `sample_centers(n, k, seed)`: start from `[0, 1, .., n-1]`; for `i` in
//!   `0..k` swap position `i` with `i + below(n - i)`; sort the first `k`.

use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot draw {k} distinct items from {n}")]
pub struct SampleError {
    pub n: usize,
    pub k: usize,
}

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let x = self.next_u64();
            if x >= threshold {
                return x % bound;
            }
        }
    }
}

fn partial_shuffle(n: usize, k: usize, rng: &mut SplitMix64) -> Vec<usize> {
    let mut items: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.below((n - i) as u64) as usize;
        items.swap(i, j);
    }
    items.truncate(k);
    items.sort_unstable();
    items
}

/// `k` distinct node ids from `0..n`, sorted ascending.
pub fn sample_centers(n: usize, k: usize, seed: u64) -> Result<Vec<usize>, SampleError> {
    if k > n {
        return Err(SampleError { n, k });
    }
    Ok(partial_shuffle(n, k, &mut SplitMix64::new(seed)))
}

/// Random positive quotas summing to `n`: `k - 1` distinct cut points drawn
/// from `1..n`, sorted, and differenced.
pub fn random_quotas(n: usize, k: usize, rng: &mut SplitMix64) -> Result<Vec<usize>, SampleError> {
    if k == 0 || k > n {
        return Err(SampleError { n, k });
    }
    let cuts = partial_shuffle(n - 1, k - 1, rng);
    let mut quotas = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts {
        quotas.push(c + 1 - prev);
        prev = c + 1;
    }
    quotas.push(n - prev);
    Ok(quotas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_stream() {
        let mut rng = SplitMix64::new(1234567);
        let got: Vec<u64> = (0..5).map(|_| rng.next_u64()).collect();
        assert_eq!(
            got,
            [
                6457827717110365317,
                3203168211198807973,
                9817491932198370423,
                4593380528125082431,
                16408922859458223821
            ]
        );
    }

    #[test]
    fn reference_samples() {
        // Frozen from an independent script following the module recipe.
        assert_eq!(sample_centers(10, 3, 42).unwrap(), [2, 3, 4]);
        assert_eq!(sample_centers(10, 3, 43).unwrap(), [0, 8, 9]);
        assert_eq!(sample_centers(100, 5, 7).unwrap(), [34, 58, 62, 70, 87]);
    }

    #[test]
    fn exhaustive_and_deterministic() {
        assert_eq!(sample_centers(7, 7, 99).unwrap(), (0..7).collect::<Vec<_>>());
        assert_eq!(sample_centers(10, 3, 5), sample_centers(10, 3, 5));
        assert_eq!(sample_centers(3, 4, 0), Err(SampleError { n: 3, k: 4 }));
        assert!(sample_centers(0, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn samples_are_distinct_in_range() {
        for seed in 0..200 {
            let s = sample_centers(10, 3, seed).unwrap();
            assert_eq!(s.len(), 3);
            assert!(s.windows(2).all(|w| w[0] < w[1]));
            assert!(s.iter().all(|&c| c < 10));
        }
    }

    #[test]
    fn below_is_roughly_uniform() {
        let mut rng = SplitMix64::new(11);
        let mut counts = [0usize; 6];
        for _ in 0..60_000 {
            counts[rng.below(6) as usize] += 1;
        }
        assert!(counts.iter().all(|&c| (9_000..11_000).contains(&c)), "{counts:?}");
    }

    #[test]
    fn random_quotas_are_positive_compositions() {
        let mut rng = SplitMix64::new(3);
        for n in 1..30 {
            for k in 1..=n {
                let q = random_quotas(n, k, &mut rng).unwrap();
                assert_eq!(q.len(), k);
                assert_eq!(q.iter().sum::<usize>(), n);
                assert!(q.iter().all(|&x| x > 0));
            }
        }
        assert!(random_quotas(3, 0, &mut rng).is_err());
    }
}
