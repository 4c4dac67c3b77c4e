use super::{CodeFamily, Sequence};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrelationMode {
    Aperiodic,
    /// Zero-pad both sequences to `period` and correlate cyclically.
    Periodic(usize),
}

/// `R(shift) = sum_t a(t) * b(t - shift)` with zero extension outside the support.
pub fn aperiodic_correlation(a: &Sequence, b: &Sequence, shift: isize) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let len = a.len() as isize;
    let start = shift.max(0);
    let end = len.min(len + shift);
    Ok((start..end)
        .map(|t| i64::from(a.at(t)) * i64::from(b.at(t - shift)))
        .sum())
}

/// Cyclic correlation of both sequences zero-padded to `period`.
pub fn periodic_correlation(
    a: &Sequence,
    b: &Sequence,
    shift: isize,
    period: usize,
) -> Result<i64> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if period < a.len() {
        return Err(Error::PeriodTooShort {
            period,
            length: a.len(),
        });
    }
    let p = period as isize;
    Ok((0..p)
        .map(|t| i64::from(a.at(t)) * i64::from(b.at((t - shift).rem_euclid(p))))
        .sum())
}

/// Sum over members of the member-wise correlation of two families.
pub fn correlation_sum(
    fa: &CodeFamily,
    fb: &CodeFamily,
    shift: isize,
    mode: CorrelationMode,
) -> Result<i64> {
    if fa.size() != fb.size() || fa.member_len() != fb.member_len() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{}",
            fa.size(),
            fa.member_len(),
            fb.size(),
            fb.member_len()
        )));
    }
    fa.members()
        .iter()
        .zip(fb.members())
        .map(|(a, b)| match mode {
            CorrelationMode::Aperiodic => aperiodic_correlation(a, b, shift),
            CorrelationMode::Periodic(p) => periodic_correlation(a, b, shift, p),
        })
        .sum()
}

/// Bit-packed `±1` sequence for fast correlation: bit set means chip `-1`.
///
/// For binary chips the product `a * b` is `+1` on agreement and `-1` on
/// disagreement, so a correlation over an overlap of `w` chips equals
/// `w - 2 * popcount(a ^ b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedSequence {
    words: Vec<u64>,
    len: usize,
}

impl PackedSequence {
    /// Returns `None` if any chip is not `±1`.
    pub fn new(seq: &Sequence) -> Option<Self> {
        if !seq.is_binary() {
            return None;
        }
        let len = seq.len();
        let mut words = vec![0u64; len.div_ceil(64) + 1];
        for (i, &c) in seq.chips().iter().enumerate() {
            if c < 0 {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        Some(Self { words, len })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    // 64 bits starting at `bit`; bits past the end read as zero.
    fn window(&self, bit: usize) -> u64 {
        let (w, off) = (bit / 64, bit % 64);
        let lo = self.words.get(w).copied().unwrap_or(0);
        if off == 0 {
            return lo;
        }
        let hi = self.words.get(w + 1).copied().unwrap_or(0);
        (lo >> off) | (hi << (64 - off))
    }

    // Mismatch count between self[a_start..a_start+width] and other[b_start..b_start+width].
    fn mismatches(&self, a_start: usize, other: &Self, b_start: usize, width: usize) -> u32 {
        let mut count = 0;
        let mut done = 0;
        while done < width {
            let take = (width - done).min(64);
            let mask = if take == 64 {
                u64::MAX
            } else {
                (1u64 << take) - 1
            };
            let x = self.window(a_start + done) ^ other.window(b_start + done);
            count += (x & mask).count_ones();
            done += take;
        }
        count
    }

    /// Same contract as [`aperiodic_correlation`].
    pub fn aperiodic(&self, other: &Self, shift: isize) -> Result<i64> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        let len = self.len as isize;
        if shift.abs() >= len {
            return Ok(0);
        }
        let width = (len - shift.abs()) as usize;
        let (a_start, b_start) = if shift >= 0 {
            (shift as usize, 0)
        } else {
            (0, (-shift) as usize)
        };
        let mism = self.mismatches(a_start, other, b_start, width);
        Ok(width as i64 - 2 * i64::from(mism))
    }

    /// Same contract as [`periodic_correlation`], via
    /// `periodic(s) = aperiodic(s) + aperiodic(s - period)` for `s` in `0..period`.
    pub fn periodic(&self, other: &Self, shift: isize, period: usize) -> Result<i64> {
        if period < self.len {
            return Err(Error::PeriodTooShort {
                period,
                length: self.len,
            });
        }
        let s = shift.rem_euclid(period as isize);
        Ok(self.aperiodic(other, s)? + self.aperiodic(other, s - period as isize)?)
    }
}
