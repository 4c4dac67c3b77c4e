use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::RgbImage;

/// Deterministic photo-like test cover: smooth seeded gradients plus fine
/// texture, every channel kept inside `[40, 215]` so embedding perturbations
/// rarely clip.
pub fn synthetic_cover(width: usize, height: usize, seed: u64) -> RgbImage {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let phases: Vec<f64> = (0..9).map(|_| rng.random_range(0.0..TAU)).collect();
    let tints: Vec<f64> = (0..3).map(|_| rng.random_range(-0.08..0.08)).collect();
    let (w, h) = (width as f64, height as f64);

    let mut pixels = Vec::with_capacity(width * height);
    for row in 0..height {
        for col in 0..width {
            let (x, y) = (col as f64 / w, row as f64 / h);
            let base = 0.5
                + 0.22 * (TAU * (1.3 * x) + phases[0]).sin() * (TAU * (0.9 * y) + phases[1]).cos()
                + 0.12 * (TAU * 3.0 * (x + y) + phases[2]).sin()
                + 0.06 * (TAU * (7.0 * x - 5.0 * y) + phases[3]).sin();
            let grain = rng.random_range(-0.035..0.035);
            let mut px = [0u8; 3];
            for (c, out) in px.iter_mut().enumerate() {
                let hue = 0.04 * (TAU * (2.0 * x + 1.5 * y) + phases[4 + c]).sin();
                let v = (base + tints[c] + hue + grain).clamp(0.0, 1.0);
                *out = (40.0 + 175.0 * v).round() as u8;
            }
            pixels.push(px);
        }
    }
    RgbImage::new(width, height, pixels).expect("non-empty dimensions")
}
