use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seed-addressed random stream.
///
/// Backed by ChaCha8, a counter-based generator whose output depends only on
/// the seed, so a given seed yields the same stream on every platform.
#[derive(Debug, Clone)]
pub struct SeededRng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl RngCore for SeededRng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.inner.fill_bytes(dst)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn equal_seeds_equal_streams() {
        let mut a = SeededRng::new(42);
        let mut b = SeededRng::new(42);
        let xs: Vec<u64> = (0..16).map(|_| a.next_u64()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.next_u64()).collect();
        assert_eq!(xs, ys);
        assert_ne!(SeededRng::new(43).next_u64(), xs[0]);
    }

    #[test]
    fn stream_is_frozen() {
        // pinned so that an accidental generator swap shows up as a test failure
        let mut r = SeededRng::new(7);
        let draws: Vec<u32> = (0..4).map(|_| r.random_range(0..1000)).collect();
        assert_eq!(draws, vec![140, 157, 182, 167]);
        assert_eq!(SeededRng::new(0).next_u64(), 0xb585_f767_a79a_3b6c);
        assert_eq!(r.seed(), 7);
    }
}
