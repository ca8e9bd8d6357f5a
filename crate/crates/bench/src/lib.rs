//! Seeded fixtures shared by the benchmarks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symprep_core::{SymmetricTarget, Target};

/// Random symmetric target with one dominant label, so plans include
/// amplification runs.
pub fn peaked(n: usize, seed: u64) -> Target {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let peak = rng.gen_range(0..=n / 2);
    let coeffs = (0..=n / 2)
        .map(|k| {
            let r = if k == peak {
                1.0
            } else {
                rng.gen_range(0.0..0.02)
            };
            Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
        })
        .collect();
    SymmetricTarget::normalized(n, coeffs).unwrap().into()
}

/// Random symmetric target with coefficients spread over the unit square.
pub fn spread(n: usize, seed: u64) -> Target {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coeffs = (0..=n / 2)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    SymmetricTarget::normalized(n, coeffs).unwrap().into()
}
