//! Maximal-length LFSR sequences and Gold-style products of two of them.

use super::Sequence;
use crate::error::{Error, Result};

/// Fibonacci LFSR description.
///
/// `taps` is the full feedback polynomial as a bitmask: bit `k` set means the
/// term `x^k` is present, so `x^3 + x + 1` is `0b1011`. The generated bits obey
/// `s[t + degree] = XOR of s[t + k]` over the set bits `k < degree`. Bit `i` of
/// `init` is the initial value of `s[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LfsrSpec {
    pub degree: u32,
    pub taps: u32,
    pub init: u32,
}

impl LfsrSpec {
    /// `x^12 + x^6 + x^4 + x + 1`.
    pub const DEGREE12_A: Self = Self::new(12, 0x1053, 1);
    /// `x^12 + x^7 + x^6 + x^5 + x^3 + x + 1`.
    pub const DEGREE12_B: Self = Self::new(12, 0x10eb, 1);

    pub const fn new(degree: u32, taps: u32, init: u32) -> Self {
        Self { degree, taps, init }
    }

    pub fn period(&self) -> usize {
        (1usize << self.degree) - 1
    }

    fn check(&self) -> Result<()> {
        if !(2..=24).contains(&self.degree) {
            return Err(Error::InvalidLfsr(format!(
                "degree {} outside 2..=24",
                self.degree
            )));
        }
        if self.taps >> self.degree != 1 {
            return Err(Error::InvalidLfsr(format!(
                "taps {:#x} do not encode a degree-{} polynomial",
                self.taps, self.degree
            )));
        }
        let mask = (1u32 << self.degree) - 1;
        if self.init & mask == 0 || self.init & !mask != 0 {
            return Err(Error::InvalidLfsr(format!(
                "initial state {:#x} invalid",
                self.init
            )));
        }
        Ok(())
    }
}

/// Maximal-length sequence of period `2^degree - 1`, bits mapped `0 -> +1`,
/// `1 -> -1`. Fails if the state cycle is shorter than the full period.
pub fn generate_msequence(spec: &LfsrSpec) -> Result<Sequence> {
    spec.check()?;
    let deg = spec.degree;
    let period = spec.period();
    let mask = (1u32 << deg) - 1;
    let feedback = spec.taps & mask;

    // state bit i holds s[t + i]
    let mut state = spec.init;
    let mut chips = Vec::with_capacity(period);
    for step in 1..=period {
        chips.push(if state & 1 == 0 { 1 } else { -1 });
        let next = (state & feedback).count_ones() & 1;
        state = (state >> 1) | (next << (deg - 1));
        if state == spec.init && step < period {
            return Err(Error::NotPrimitive {
                taps: spec.taps,
                cycle: step,
                expected: period,
            });
        }
    }
    if state != spec.init {
        return Err(Error::NotPrimitive {
            taps: spec.taps,
            cycle: 0,
            expected: period,
        });
    }
    Sequence::new(chips)
}

/// Chip-wise product `a[t] * b[(t + relative_shift) mod P]` of two
/// m-sequences of equal degree.
pub fn generate_gold(a: &LfsrSpec, b: &LfsrSpec, relative_shift: usize) -> Result<Sequence> {
    if a.degree != b.degree {
        return Err(Error::InvalidLfsr(format!(
            "degree mismatch: {} vs {}",
            a.degree, b.degree
        )));
    }
    if a.taps == b.taps {
        return Err(Error::InvalidLfsr(
            "Gold construction needs two distinct polynomials".into(),
        ));
    }
    let sa = generate_msequence(a)?;
    let sb = generate_msequence(b)?;
    let period = sa.len();
    let chips = (0..period)
        .map(|t| sa.chips()[t] * sb.chips()[(t + relative_shift) % period])
        .collect();
    Sequence::new(chips)
}
