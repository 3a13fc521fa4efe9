//! Seeded pseudo-random streams.
//!
//! Every randomized component of the crate draws from [`SplitMix64`] streams
//! whose seeds are derived with [`mix`], so batches of trials are
//! reproducible bit-for-bit and independent trials can run concurrently.

/// SplitMix64 finalizer (Sebastiano Vigna). Non-cryptographic.
#[inline]
fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Derives the seed of an independent stream: trial `i` of a batch with base
/// seed `s` uses `mix(s, i)`. This is the crate-wide seed-derivation rule.
#[inline]
pub fn mix(seed: u64, stream: u64) -> u64 {
    finalize(seed.wrapping_add(GOLDEN_GAMMA.wrapping_mul(stream.wrapping_add(1))))
}

/// SplitMix64 generator: fast, good bit diffusion, non-cryptographic.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        finalize(self.state)
    }

    /// Uniform draw from `[0, bound)` by masked rejection (no modulo bias).
    #[inline]
    pub fn below_u64(&mut self, bound: u64) -> u64 {
        debug_assert!(bound > 0);
        if bound == 1 {
            return 0;
        }
        let mask = u64::MAX >> (bound - 1).leading_zeros();
        loop {
            let candidate = self.next_u64() & mask;
            if candidate < bound {
                return candidate;
            }
        }
    }

    /// Uniform draw from `[0, bound)` for 128-bit bounds.
    #[inline]
    pub fn below_u128(&mut self, bound: u128) -> u128 {
        debug_assert!(bound > 0);
        if bound <= u64::MAX as u128 {
            return self.below_u64(bound as u64) as u128;
        }
        let mask = u128::MAX >> (bound - 1).leading_zeros();
        loop {
            let candidate =
                ((self.next_u64() as u128) << 64 | self.next_u64() as u128) & mask;
            if candidate < bound {
                return candidate;
            }
        }
    }

    pub fn below_usize(&mut self, bound: usize) -> usize {
        self.below_u64(bound as u64) as usize
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below_usize(i + 1);
            items.swap(i, j);
        }
    }
}

/// Uniform sample of `count` distinct values from `[0, population)`, drawn
/// with a sparse partial Fisher-Yates shuffle so memory stays `O(count)`
/// even when the population is astronomically large. The result is unsorted.
pub fn sample_distinct(rng: &mut SplitMix64, population: u128, count: usize) -> Vec<u128> {
    debug_assert!(count as u128 <= population);
    let mut displaced: std::collections::HashMap<u128, u128> = std::collections::HashMap::new();
    let mut picked = Vec::with_capacity(count);
    for i in 0..count as u128 {
        let j = i + rng.below_u128(population - i);
        let value_at_j = displaced.get(&j).copied().unwrap_or(j);
        let value_at_i = displaced.get(&i).copied().unwrap_or(i);
        displaced.insert(j, value_at_i);
        picked.push(value_at_j);
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic() {
        let mut a = SplitMix64::new(42);
        let mut b = SplitMix64::new(42);
        for _ in 0..32 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
        assert_ne!(SplitMix64::new(1).next_u64(), SplitMix64::new(2).next_u64());
    }

    #[test]
    fn mix_separates_streams() {
        assert_ne!(mix(7, 0), mix(7, 1));
        assert_ne!(mix(7, 0), mix(8, 0));
        assert_eq!(mix(7, 3), mix(7, 3));
    }

    #[test]
    fn below_is_in_range_and_hits_every_value() {
        let mut rng = SplitMix64::new(9);
        let mut seen = [false; 7];
        for _ in 0..1000 {
            let v = rng.below_u64(7);
            assert!(v < 7);
            seen[v as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));

        let big = (u64::MAX as u128) + 5;
        for _ in 0..100 {
            assert!(rng.below_u128(big) < big);
        }
    }

    #[test]
    fn sample_distinct_is_distinct_and_in_range() {
        let mut rng = SplitMix64::new(11);
        let mut sample = sample_distinct(&mut rng, 100, 100);
        sample.sort_unstable();
        assert_eq!(sample, (0..100).collect::<Vec<_>>());

        let mut sample = sample_distinct(&mut rng, 1_000_000_000_000, 50);
        sample.sort_unstable();
        sample.dedup();
        assert_eq!(sample.len(), 50);
        assert!(sample.iter().all(|&v| v < 1_000_000_000_000));
    }

    #[test]
    fn below_u64_uniformity_coarse() {
        // Frequencies of each residue within 3 standard errors of 1/k.
        let mut rng = SplitMix64::new(123);
        let k = 5u64;
        let n = 100_000;
        let mut counts = [0u32; 5];
        for _ in 0..n {
            counts[rng.below_u64(k) as usize] += 1;
        }
        let p = 1.0 / k as f64;
        let se = (p * (1.0 - p) * n as f64).sqrt();
        for &c in &counts {
            assert!((c as f64 - n as f64 * p).abs() <= 3.0 * se, "counts {counts:?}");
        }
    }
}
