//! CT-CDMA-style transmultiplexer.
//!
//! Each 16-ary symbol occupies one *slot* `(family q, cyclic shift r)` of a
//! [`SlotGrid`]. The slot's template splits the length-`T` carrier into `n`
//! lanes of length `τ = l`; lane `j` carries member `j` of family `q` rotated
//! by `r`. Because templates only ever meet same-index members, their inner
//! products are periodic correlation sums of the code, which vanish for every
//! pair of distinct slots on a valid complete complementary code.

mod grid;
mod noise;
mod spread;

pub use grid::{Slot, SlotGrid};
pub use noise::add_noise;
pub use spread::{despread, despread_direct, spread, spread_direct};

use std::ops::{Add, Mul, Sub};

use crate::error::{Error, Result};

/// Number of amplitude levels per symbol.
pub const LEVELS: u8 = 16;

const CENTER: f64 = 7.5;

/// Centered, unit-spaced amplitude of a 16-ary symbol: `x - 7.5`.
pub fn amplitude(symbol: u8) -> Result<f64> {
    if symbol >= LEVELS {
        return Err(Error::SymbolOutOfRange(symbol));
    }
    Ok(f64::from(symbol) - CENTER)
}

/// Hard decision on a matched-filter output: nearest level, clamped to
/// `0..=15`; halves round away from zero.
pub fn decide(raw: f64, alpha: f64, peak: f64) -> u8 {
    let level = (raw / (alpha * peak) + CENTER).round();
    level.clamp(0.0, f64::from(LEVELS - 1)) as u8
}

/// Splits bytes into nibbles, upper nibble first.
pub fn bytes_to_symbols(bytes: &[u8]) -> Vec<u8> {
    bytes.iter().flat_map(|&b| [b >> 4, b & 0x0f]).collect()
}

/// Inverse of [`bytes_to_symbols`].
pub fn symbols_to_bytes(symbols: &[u8]) -> Result<Vec<u8>> {
    if !symbols.len().is_multiple_of(2) {
        return Err(Error::OddSymbolCount(symbols.len()));
    }
    symbols
        .chunks_exact(2)
        .map(|pair| {
            if let Some(&bad) = pair.iter().find(|&&s| s >= LEVELS) {
                return Err(Error::SymbolOutOfRange(bad));
            }
            Ok(pair[0] << 4 | pair[1])
        })
        .collect()
}

/// The symbols one channel transmits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolStream {
    channel: usize,
    symbols: Vec<u8>,
}

impl SymbolStream {
    pub fn new(channel: usize, symbols: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= LEVELS) {
            return Err(Error::SymbolOutOfRange(bad));
        }
        Ok(Self { channel, symbols })
    }

    pub fn from_bytes(channel: usize, bytes: &[u8]) -> Self {
        Self {
            channel,
            symbols: bytes_to_symbols(bytes),
        }
    }

    pub fn channel(&self) -> usize {
        self.channel
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// A length-`T` real vector: the spread signal, or the coefficient difference
/// fed to the matched filter bank.
#[derive(Debug, Clone, PartialEq)]
pub struct CarrierVector(Vec<f64>);

impl CarrierVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn zeros(len: usize) -> Self {
        Self(vec![0.0; len])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_values(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn energy(&self) -> f64 {
        self.dot(self)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self(self.0.iter().map(|v| v * k).collect())
    }
}

impl Add for &CarrierVector {
    type Output = CarrierVector;

    fn add(self, rhs: Self) -> CarrierVector {
        CarrierVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &CarrierVector {
    type Output = CarrierVector;

    fn sub(self, rhs: Self) -> CarrierVector {
        CarrierVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<f64> for &CarrierVector {
    type Output = CarrierVector;

    fn mul(self, k: f64) -> CarrierVector {
        self.scaled(k)
    }
}
