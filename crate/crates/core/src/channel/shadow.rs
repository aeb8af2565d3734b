//! Seeded log-normal shadowing draws (normal in dB).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Stream of zero-mean normal shadowing values with spread `sigma_db`.
///
/// The stream is fully determined by the seed. Parallel workers should each
/// own a sampler with a distinct seed.
#[derive(Debug, Clone)]
pub struct ShadowSampler {
    sigma_db: f64,
    rng: ChaCha8Rng,
}

impl ShadowSampler {
    pub fn new(sigma_db: f64, seed: u64) -> Self {
        ShadowSampler {
            sigma_db,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn sample(&mut self) -> f64 {
        if self.sigma_db == 0.0 {
            return 0.0;
        }
        let z: f64 = StandardNormal.sample(&mut self.rng);
        self.sigma_db * z
    }
}

impl Iterator for ShadowSampler {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        Some(self.sample())
    }
}

/// Single shadowing draw for `seed`.
pub fn sample_shadow(sigma_db: f64, seed: u64) -> f64 {
    ShadowSampler::new(sigma_db, seed).sample()
}
