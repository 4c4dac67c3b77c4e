use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::CarrierVector;

/// Adds seeded white Gaussian noise of standard deviation `sigma`.
/// `sigma == 0` returns the carrier unchanged.
pub fn add_noise(carrier: &CarrierVector, sigma: f64, seed: u64) -> CarrierVector {
    if sigma <= 0.0 {
        return carrier.clone();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("finite positive sigma");
    CarrierVector::new(
        carrier
            .values()
            .iter()
            .map(|v| v + normal.sample(&mut rng))
            .collect(),
    )
}
