//! Seeded parameter sampling for the verification suites.
//!
//! Sampling goes through `next_u64` directly so the generated streams depend
//! only on the ChaCha8 keystream, which is specified and stable.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::{ratio, Rational};

pub(crate) struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform-ish integer in lo..=hi (modulo bias is irrelevant here).
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.rng.next_u64() % span) as i64
    }

    /// Small rational p/q with |p| <= max_num and 1 <= q <= max_den.
    pub fn small_rational(&mut self, max_num: i64, max_den: i64) -> Rational {
        let p = self.int_in(-max_num, max_num);
        let q = self.int_in(1, max_den);
        ratio(p, q)
    }
}
