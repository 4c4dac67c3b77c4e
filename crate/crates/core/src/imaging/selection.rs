//! Keyed choice of mid-band DCT coefficient positions.
//!
//! Candidates are the positions whose zigzag rank falls in `[lo, hi)`, listed
//! in zigzag order. The key is hashed with 64-bit FNV-1a; the hash seeds a
//! SplitMix64 stream that drives a partial Fisher–Yates shuffle:
//!
//! ```text
//! for i in 0..T { j = i + next_u64() % (len - i); swap(i, j) }
//! ```
//!
//! The first `T` shuffled candidates, in order, are the carrier positions
//! `t = 0..T`. Every step is integer arithmetic, so independent
//! implementations select identical positions.

use std::hash::Hasher;
use std::io::Write;

use fnv::FnvHasher;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};

/// Diagonal zigzag traversal of a `height x width` plane as `(row, col)`.
pub fn zigzag_order(height: usize, width: usize) -> Vec<(usize, usize)> {
    let mut order = Vec::with_capacity(height * width);
    if height == 0 || width == 0 {
        return order;
    }
    for s in 0..height + width - 1 {
        let r_hi = s.min(height - 1);
        let r_lo = s.saturating_sub(width - 1);
        if s % 2 == 0 {
            order.extend((r_lo..=r_hi).rev().map(|r| (r, s - r)));
        } else {
            order.extend((r_lo..=r_hi).map(|r| (r, s - r)));
        }
    }
    order
}

pub fn key_seed(key: &str) -> u64 {
    let mut h = FnvHasher::default();
    h.write(key.as_bytes());
    h.finish()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSelection {
    positions: Vec<(usize, usize)>,
    key: String,
    band: (usize, usize),
}

impl CoefficientSelection {
    /// `(row, col)` for each carrier index `t`.
    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn band(&self) -> (usize, usize) {
        self.band
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Diagnostic CSV with header `t,row,col`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "row", "col"])?;
        for (t, (r, c)) in self.positions.iter().enumerate() {
            w.write_record([t.to_string(), r.to_string(), c.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Picks `count` distinct positions of a `(height, width)` plane from the
/// zigzag-rank band `[lo, hi)`.
pub fn select_coefficients(
    key: &str,
    dims: (usize, usize),
    band: (usize, usize),
    count: usize,
) -> Result<CoefficientSelection> {
    let (height, width) = dims;
    let (lo, hi) = band;
    let total = height * width;
    if count == 0 {
        return Err(Error::InvalidBand(
            "at least one coefficient must be selected".into(),
        ));
    }
    if lo >= hi || hi > total {
        return Err(Error::InvalidBand(format!(
            "[{lo}, {hi}) is not a band of {total} coefficients"
        )));
    }
    if hi - lo < count {
        return Err(Error::BandTooSmall {
            lo,
            hi,
            available: hi - lo,
            requested: count,
        });
    }

    let mut candidates = zigzag_order(height, width)[lo..hi].to_vec();
    let mut rng = SplitMix64::from_seed(key_seed(key).to_le_bytes());
    let len = candidates.len();
    for i in 0..count {
        let j = i + (rng.next_u64() % (len - i) as u64) as usize;
        candidates.swap(i, j);
    }
    candidates.truncate(count);
    Ok(CoefficientSelection {
        positions: candidates,
        key: key.to_owned(),
        band,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn fnv_and_splitmix_reference_values() {
        assert_eq!(key_seed(""), 0xcbf29ce484222325);
        assert_eq!(key_seed("a"), 0xaf63dc4c8601ec8c);
        let mut rng = SplitMix64::from_seed(0u64.to_le_bytes());
        assert_eq!(rng.next_u64(), 0xe220a8397b1dcdaf);
        assert_eq!(rng.next_u64(), 0x6e789e6aa1b965f4);
    }

    #[test]
    fn zigzag_8x8_prefix() {
        let z = zigzag_order(8, 8);
        assert_eq!(&z[..6], &[(0, 0), (0, 1), (1, 0), (2, 0), (1, 1), (0, 2)]);
        assert_eq!(z[63], (7, 7));
    }

    #[test]
    fn zigzag_is_a_permutation() {
        for (h, w) in [(1, 1), (1, 7), (7, 1), (3, 5), (8, 8), (6, 4), (17, 9)] {
            let z = zigzag_order(h, w);
            assert_eq!(z.len(), h * w);
            let set: HashSet<_> = z.iter().copied().collect();
            assert_eq!(set.len(), h * w);
            assert!(z.iter().all(|&(r, c)| r < h && c < w));
            // consecutive entries are neighbours within a diagonal or step to the next one
            for pair in z.windows(2) {
                let (a, b) = (pair[0].0 + pair[0].1, pair[1].0 + pair[1].1);
                assert!(b == a || b == a + 1);
            }
        }
    }

    #[test]
    fn deterministic_and_key_sensitive() {
        let a1 = select_coefficients("a", (64, 64), (400, 2000), 256).unwrap();
        let a2 = select_coefficients("a", (64, 64), (400, 2000), 256).unwrap();
        let b = select_coefficients("b", (64, 64), (400, 2000), 256).unwrap();
        assert_eq!(a1, a2);
        assert_ne!(a1.positions(), b.positions());
    }

    #[test]
    fn default_params_stay_in_band() {
        let sel = select_coefficients("secret", (512, 512), (26214, 131072), 4096).unwrap();
        assert_eq!(sel.len(), 4096);
        let rank: std::collections::HashMap<(usize, usize), usize> = zigzag_order(512, 512)
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let distinct: HashSet<_> = sel.positions().iter().collect();
        assert_eq!(distinct.len(), 4096);
        assert!(sel
            .positions()
            .iter()
            .all(|p| (26214..131072).contains(&rank[p])));
    }

    #[test]
    fn selection_is_prefix_of_keyed_permutation() {
        // Selecting fewer positions yields a prefix of a longer selection.
        let short = select_coefficients("k", (32, 32), (100, 600), 50).unwrap();
        let long = select_coefficients("k", (32, 32), (100, 600), 500).unwrap();
        assert_eq!(short.positions(), &long.positions()[..50]);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            select_coefficients("k", (8, 8), (10, 20), 11),
            Err(Error::BandTooSmall {
                available: 10,
                requested: 11,
                ..
            })
        ));
        assert!(select_coefficients("k", (8, 8), (10, 20), 0).is_err());
        assert!(select_coefficients("k", (8, 8), (20, 10), 1).is_err());
        assert!(select_coefficients("k", (8, 8), (10, 65), 1).is_err());
    }

    #[test]
    fn csv_export() {
        let sel = select_coefficients("k", (8, 8), (10, 20), 3).unwrap();
        let mut buf = Vec::new();
        sel.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,row,col");
        assert_eq!(lines.len(), 4);
        let (r, c) = sel.positions()[2];
        assert_eq!(lines[3], format!("2,{r},{c}"));
    }
}
