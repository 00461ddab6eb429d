use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::{modular, rat_int, Rational};

/// Redraw limit before a generic-point search gives up.
pub const MAX_REDRAWS: usize = 32;
const BOUND: i64 = 17;

/// Seeded source of generic points: integer coordinates uniform in [-17, 17]
/// for base points, uniform residues for modular screening.
#[derive(Debug, Clone)]
pub struct GenericPoints {
    rng: ChaCha8Rng,
}

impl GenericPoints {
    pub fn new(seed: u64) -> Self {
        GenericPoints {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn draw(&mut self, nvars: usize) -> Vec<Rational> {
        (0..nvars)
            .map(|_| rat_int(self.rng.gen_range(-BOUND..=BOUND)))
            .collect()
    }

    pub fn draw_residues(&mut self, nvars: usize) -> Vec<u64> {
        (0..nvars)
            .map(|_| self.rng.gen_range(0..modular::PRIME))
            .collect()
    }

    /// An independent generator for a sub-task, so the main stream does not
    /// depend on how many draws the sub-task consumed.
    pub fn fork(&mut self) -> GenericPoints {
        GenericPoints::new(self.rng.gen())
    }
}
