//! Deterministic random inputs.
//!
//! Rationals have numerator and denominator drawn uniformly from
//! `[1, 2^16]` by a ChaCha generator seeded from a `u64`, so every failing
//! trial can be replayed from its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom_crystal::{GcPoint, GcTuple, GeomCrystal};
use crate::semifield::{rat, Rational};

pub const MAX_PART: i64 = 1 << 16;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(1..=MAX_PART);
        let q = self.rng.gen_range(1..=MAX_PART);
        rat(p, q).expect("nonzero denominator")
    }

    /// Small positive rational with parts in `[1, bound]`.
    pub fn small_rational(&mut self, bound: i64) -> Rational {
        let p = self.rng.gen_range(1..=bound);
        let q = self.rng.gen_range(1..=bound);
        rat(p, q).expect("nonzero denominator")
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn index(&mut self, upper_inclusive: usize) -> usize {
        self.rng.gen_range(0..=upper_inclusive)
    }

    pub fn point(&mut self, n: usize) -> GcPoint<Rational> {
        let coords = (0..2 * n - 1).map(|_| self.rational()).collect();
        GcPoint::new(n, coords).expect("sampled point is valid")
    }

    pub fn tuple(&mut self, n: usize, len: usize) -> GcTuple<Rational> {
        GcTuple::new((0..len).map(|_| self.point(n)).collect()).expect("same rank")
    }

    /// Points whose levels are pairwise distinct.
    pub fn points_distinct_levels(&mut self, n: usize, len: usize) -> Vec<GcPoint<Rational>> {
        let mut out: Vec<GcPoint<Rational>> = Vec::with_capacity(len);
        while out.len() < len {
            let p = self.point(n);
            let l = p.level();
            if out.iter().all(|q| q.level() != l) {
                out.push(p);
            }
        }
        out
    }

    pub fn pair(&mut self, n: usize) -> (GcPoint<Rational>, GcPoint<Rational>) {
        let mut v = self.points_distinct_levels(n, 2);
        let y = v.pop().unwrap();
        let x = v.pop().unwrap();
        (x, y)
    }
}
