use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::Field;

/// The generator behind every seeded choice in the crate: ChaCha8 seeded with
/// `seed_from_u64(seed)`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic pseudo-random vector of length `dim` (see
/// [`Field::random_element`] for the coordinate distribution).
pub fn seeded_random_vector<F: Field>(f: &F, dim: usize, seed: u64) -> Vec<F::Elem> {
    let mut rng = seeded_rng(seed);
    (0..dim).map(|_| f.random_element(&mut rng)).collect()
}
