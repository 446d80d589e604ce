//! Deterministic seeded sampling of safe arguments in the fundamental cell.
//!
//! Campaign points are uniform in the cell and rejected while any sampled or
//! composite argument (pairwise sums, differences, the total sum) comes
//! closer to the lattice than the safety radius, or while two points of a
//! tuple nearly coincide. Rejection resampling from a counter-based stream
//! cipher keeps every campaign bit-reproducible from its seed.

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::lattice::Lattice;
use crate::tolerances::{PAIRWISE_MIN_FACTOR, RHO_MIN_FACTOR, SAMPLER_MAX_ATTEMPTS};

/// Seeded sampler over one lattice's fundamental cell.
pub struct CellSampler {
    lattice: Lattice,
    rng: ChaCha8Rng,
    rho_min: f64,
    pairwise_min: f64,
}

impl CellSampler {
    pub fn new(lattice: Lattice, seed: u64) -> Self {
        let shortest = lattice.shortest_vector();
        CellSampler {
            lattice,
            rng: ChaCha8Rng::seed_from_u64(seed),
            rho_min: RHO_MIN_FACTOR * shortest,
            pairwise_min: PAIRWISE_MIN_FACTOR * shortest,
        }
    }

    /// Safety radius enforced around the lattice.
    pub fn rho_min(&self) -> f64 {
        self.rho_min
    }

    fn unit(&mut self) -> f64 {
        // 53 uniform bits in [0, 1).
        (self.rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
    }

    /// One point uniform in the fundamental cell (basis coefficients in
    /// [-1/2, 1/2)).
    pub fn cell_point(&mut self) -> Complex64 {
        let a = self.unit() - 0.5;
        let b = self.unit() - 0.5;
        self.lattice.omega1() * a + self.lattice.omega2() * b
    }

    fn is_safe(&self, u: Complex64) -> Result<bool> {
        Ok(self.lattice.distance_to_lattice(u)? >= self.rho_min)
    }

    /// Draws `count` points such that each point, every pairwise difference,
    /// and every extra composite produced by `composites` stays at the safety
    /// distance from the lattice. Returns `None` when the attempt budget is
    /// exhausted (the caller records a skipped trial).
    pub fn safe_tuple<F>(&mut self, count: usize, composites: F) -> Result<Option<Vec<Complex64>>>
    where
        F: Fn(&[Complex64]) -> Vec<Complex64>,
    {
        'attempt: for _ in 0..SAMPLER_MAX_ATTEMPTS {
            let points: Vec<Complex64> = (0..count).map(|_| self.cell_point()).collect();
            for (i, &p) in points.iter().enumerate() {
                if !self.is_safe(p)? {
                    continue 'attempt;
                }
                for &q in &points[..i] {
                    if (p - q).norm() < self.pairwise_min || !self.is_safe(p - q)? {
                        continue 'attempt;
                    }
                }
            }
            for extra in composites(&points) {
                if !self.is_safe(extra)? {
                    continue 'attempt;
                }
            }
            return Ok(Some(points));
        }
        Ok(None)
    }
}
