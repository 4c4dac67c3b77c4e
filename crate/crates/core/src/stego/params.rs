use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::seqlib::{
    generate_ccc, generate_gold, generate_msequence, CompleteComplementaryCode, LfsrSpec,
};

/// Order of the complementary code used by [`Scheme::Ccc`]: a (16, 16, 256) code.
pub const CCC_ORDER: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    /// (16, 16, 256) complete complementary code, T = 4096.
    Ccc,
    /// Degree-12 m-sequence, direct spreading, T = 4095.
    Mseq,
    /// Product of the two default degree-12 m-sequences, T = 4095.
    Gold,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::Ccc, Scheme::Mseq, Scheme::Gold];

    pub fn code(self) -> Result<CompleteComplementaryCode> {
        match self {
            Scheme::Ccc => generate_ccc(CCC_ORDER),
            Scheme::Mseq => Ok(CompleteComplementaryCode::single(generate_msequence(
                &LfsrSpec::DEGREE12_A,
            )?)),
            Scheme::Gold => Ok(CompleteComplementaryCode::single(generate_gold(
                &LfsrSpec::DEGREE12_A,
                &LfsrSpec::DEGREE12_B,
                0,
            )?)),
        }
    }

    /// Carrier length `T`.
    pub fn period(self) -> usize {
        match self {
            Scheme::Ccc => CCC_ORDER * CCC_ORDER * CCC_ORDER,
            Scheme::Mseq | Scheme::Gold => 4095,
        }
    }

    /// Largest channel count the scheme's grid accepts.
    pub fn max_channels(self) -> usize {
        match self {
            Scheme::Ccc => CCC_ORDER,
            Scheme::Mseq | Scheme::Gold => self.period(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Ccc => "ccc",
            Scheme::Mseq => "mseq",
            Scheme::Gold => "gold",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "ccc" => Ok(Scheme::Ccc),
            "mseq" | "m-sequence" | "msequence" => Ok(Scheme::Mseq),
            "gold" => Ok(Scheme::Gold),
            other => Err(Error::InvalidParams(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Mid-frequency band as fractions of the zigzag-ordered coefficient count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl Band {
    pub const DEFAULT: Band = Band { lo: 0.1, hi: 0.5 };

    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        let band = Self { lo, hi };
        band.check()?;
        Ok(band)
    }

    fn check(&self) -> Result<()> {
        if !(self.lo >= 0.0 && self.lo < self.hi && self.hi <= 1.0) {
            return Err(Error::InvalidBand(format!(
                "{}:{} must satisfy 0 <= lo < hi <= 1",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    /// Zigzag ranks `[floor(lo·total), floor(hi·total))`.
    pub fn ranks(&self, total: usize) -> (usize, usize) {
        let at = |f: f64| ((f * total as f64).floor() as usize).min(total);
        (at(self.lo), at(self.hi))
    }
}

impl Default for Band {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl FromStr for Band {
    type Err = Error;

    /// `lo:hi` as fractions (`0.1:0.5`) or percentages (`10%:50%`).
    fn from_str(s: &str) -> Result<Self> {
        let (lo, hi) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidBand(format!("expected lo:hi, got {s:?}")))?;
        let parse = |v: &str| -> Result<f64> {
            let v = v.trim();
            let (num, scale) = match v.strip_suffix('%') {
                Some(p) => (p, 0.01),
                None => (v, 1.0),
            };
            num.parse::<f64>()
                .map(|x| x * scale)
                .map_err(|e| Error::InvalidBand(format!("{v:?}: {e}")))
        };
        Band::new(parse(lo)?, parse(hi)?)
    }
}

/// Everything sender and receiver must share: there is no in-band header.
#[derive(Debug, Clone, PartialEq)]
pub struct StegoParams {
    pub key: String,
    pub alpha: f64,
    /// `M`
    pub channels: usize,
    /// `N`, bytes per channel fragment.
    pub fragment_bytes: usize,
    /// `d`
    pub chip_interval: usize,
    pub scheme: Scheme,
    pub band: Band,
}

impl StegoParams {
    pub fn new(key: impl Into<String>, fragment_bytes: usize) -> Self {
        Self {
            key: key.into(),
            alpha: 0.25,
            channels: 1,
            fragment_bytes,
            chip_interval: 1,
            scheme: Scheme::Ccc,
            band: Band::DEFAULT,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParams(format!(
                "alpha must be positive, got {}",
                self.alpha
            )));
        }
        if self.channels == 0 || self.channels > self.scheme.max_channels() {
            return Err(Error::InvalidParams(format!(
                "channels must be in 1..={} for {}, got {}",
                self.scheme.max_channels(),
                self.scheme,
                self.channels
            )));
        }
        if self.chip_interval == 0 {
            return Err(Error::InvalidParams(
                "chip interval must be at least 1".into(),
            ));
        }
        self.band.check()
    }

    pub fn period(&self) -> usize {
        self.scheme.period()
    }

    /// `M·N`.
    pub fn capacity(&self) -> usize {
        self.channels * self.fragment_bytes
    }
}
