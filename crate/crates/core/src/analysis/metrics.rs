use crate::error::{Error, Result};
use crate::imaging::RgbImage;

/// `10·log10(255² / MSE)` over every channel of every pixel. Identical images
/// give `f64::INFINITY`.
pub fn psnr(a: &RgbImage, b: &RgbImage) -> Result<f64> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch(
            a.width(),
            a.height(),
            b.width(),
            b.height(),
        ));
    }
    let sse: u64 = a
        .pixels()
        .iter()
        .flatten()
        .zip(b.pixels().iter().flatten())
        .map(|(&x, &y)| {
            let d = u64::from(x.abs_diff(y));
            d * d
        })
        .sum();
    if sse == 0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse as f64 / (3 * a.pixels().len()) as f64;
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

/// Fraction of positions of `sent` whose byte was received unchanged; bytes
/// missing from `received` count as wrong. An empty `sent` gives 1.0.
pub fn extraction_probability(sent: &[u8], received: &[u8]) -> f64 {
    if sent.is_empty() {
        return 1.0;
    }
    let hits = sent.iter().zip(received).filter(|(a, b)| a == b).count();
    hits as f64 / sent.len() as f64
}
