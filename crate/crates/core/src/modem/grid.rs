use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::CarrierVector;
use crate::error::{Error, Result};
use crate::seqlib::CompleteComplementaryCode;

/// One orthogonal signalling dimension of the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub family: usize,
    pub shift: usize,
}

/// Slot layout over a code: `m` families × `τ` cyclic shifts, carrier period
/// `T = n·τ`, chip interval `d`, `M` channels.
///
/// A degenerate `(1, 1, l)` code (see [`CompleteComplementaryCode::single`])
/// gives the direct-spreading baseline: one family, channels separated by a
/// shift offset of `⌊τ/M⌋`, and any `M ≤ τ`.
#[derive(Clone)]
pub struct SlotGrid {
    code: CompleteComplementaryCode,
    chip_interval: usize,
    channels: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    // spectra[q][j] = DFT of member j of family q
    spectra: Vec<Vec<Vec<Complex64>>>,
}

impl fmt::Debug for SlotGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SlotGrid")
            .field("params", &self.code.params())
            .field("amplitude", &self.code.amplitude())
            .field("chip_interval", &self.chip_interval)
            .field("channels", &self.channels)
            .finish()
    }
}

impl SlotGrid {
    pub fn new(
        code: CompleteComplementaryCode,
        chip_interval: usize,
        channels: usize,
    ) -> Result<Self> {
        let (m, _, lane_len) = code.params();
        if chip_interval == 0 {
            return Err(Error::InvalidGrid(
                "chip interval must be at least 1".into(),
            ));
        }
        if channels == 0 {
            return Err(Error::InvalidGrid(
                "at least one channel is required".into(),
            ));
        }
        let limit = if m == 1 { lane_len } else { m };
        if channels > limit {
            return Err(Error::InvalidGrid(format!(
                "{channels} channels exceed the limit of {limit}"
            )));
        }

        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(lane_len);
        let ifft = planner.plan_fft_inverse(lane_len);
        let spectra = code
            .families()
            .iter()
            .map(|fam| {
                fam.members()
                    .iter()
                    .map(|s| {
                        let mut buf: Vec<Complex64> = s
                            .chips()
                            .iter()
                            .map(|&c| Complex64::new(f64::from(c), 0.0))
                            .collect();
                        fft.process(&mut buf);
                        buf
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            code,
            chip_interval,
            channels,
            fft,
            ifft,
            spectra,
        })
    }

    pub fn code(&self) -> &CompleteComplementaryCode {
        &self.code
    }

    /// `m`.
    pub fn families(&self) -> usize {
        self.code.params().0
    }

    /// `n`.
    pub fn lanes(&self) -> usize {
        self.code.params().1
    }

    /// `τ = l`.
    pub fn lane_len(&self) -> usize {
        self.code.params().2
    }

    /// `T = n·τ`.
    pub fn period(&self) -> usize {
        self.lanes() * self.lane_len()
    }

    pub fn chip_interval(&self) -> usize {
        self.chip_interval
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Zero-shift correlation peak `A`.
    pub fn peak(&self) -> f64 {
        self.code.amplitude() as f64
    }

    /// Total number of orthogonal slots, `m·τ`.
    pub fn slot_count(&self) -> usize {
        self.families() * self.lane_len()
    }

    pub fn is_baseline(&self) -> bool {
        self.families() == 1
    }

    /// Slot of symbol `k` on channel `i`.
    ///
    /// Complementary grids: `r = k·d mod τ`, `q = (i + M·⌊k·d/τ⌋) mod m`, so a
    /// channel starts in family `i` and steps by `M` families on wraparound.
    /// Baseline grids: `q = 0`, `r = (i·⌊τ/M⌋ + k·d) mod τ`.
    pub fn slot_of(&self, channel: usize, k: usize) -> Result<Slot> {
        if channel >= self.channels {
            return Err(Error::ChannelOutOfRange {
                channel,
                channels: self.channels,
            });
        }
        let tau = self.lane_len();
        let pos = k * self.chip_interval;
        if self.is_baseline() {
            let offset = channel * (tau / self.channels);
            return Ok(Slot {
                family: 0,
                shift: (offset + pos) % tau,
            });
        }
        let family = (channel + self.channels * (pos / tau)) % self.families();
        Ok(Slot {
            family,
            shift: pos % tau,
        })
    }

    fn check_slot(&self, slot: Slot) -> Result<()> {
        if slot.family >= self.families() || slot.shift >= self.lane_len() {
            return Err(Error::SlotOutOfRange {
                family: slot.family,
                shift: slot.shift,
                families: self.families(),
                lanes: self.lane_len(),
            });
        }
        Ok(())
    }

    /// Lane `j` holds member `j` of family `q` rotated right by `r`:
    /// `out[j·τ + u] = c_j^(q)[(u - r) mod τ]`.
    pub fn template(&self, slot: Slot) -> Result<CarrierVector> {
        self.check_slot(slot)?;
        let family = self.code.family(slot.family);
        let values = family
            .members()
            .iter()
            .flat_map(|m| m.rotated(slot.shift).chips().to_vec())
            .map(f64::from)
            .collect();
        Ok(CarrierVector::new(values))
    }

    /// Symbols that land on an already occupied slot, given how many symbols
    /// each channel sends.
    pub fn collisions(&self, symbols_per_channel: &[usize]) -> Result<usize> {
        let mut seen = HashSet::new();
        let mut collisions = 0;
        for (i, &count) in symbols_per_channel.iter().enumerate() {
            for k in 0..count {
                if !seen.insert(self.slot_of(i, k)?) {
                    collisions += 1;
                }
            }
        }
        Ok(collisions)
    }

    /// Superposes per-slot amplitudes (`amps[q][r]`) onto the carrier by
    /// circular convolution in the frequency domain.
    pub(crate) fn synthesize(&self, amps: &[Vec<f64>]) -> CarrierVector {
        let tau = self.lane_len();
        let amp_spectra: Vec<Option<Vec<Complex64>>> = amps
            .iter()
            .map(|row| {
                if row.iter().all(|&a| a == 0.0) {
                    return None;
                }
                let mut buf: Vec<Complex64> = row.iter().map(|&a| Complex64::new(a, 0.0)).collect();
                self.fft.process(&mut buf);
                Some(buf)
            })
            .collect();

        let scale = 1.0 / tau as f64;
        let mut out = Vec::with_capacity(self.period());
        for j in 0..self.lanes() {
            let mut acc = vec![Complex64::new(0.0, 0.0); tau];
            for (q, spec) in amp_spectra.iter().enumerate() {
                let Some(spec) = spec else { continue };
                for ((a, s), c) in acc.iter_mut().zip(spec).zip(&self.spectra[q][j]) {
                    *a += s * c;
                }
            }
            self.ifft.process(&mut acc);
            out.extend(acc.iter().map(|z| z.re * scale));
        }
        CarrierVector::new(out)
    }

    /// Matched filter bank: correlation of the carrier with every slot
    /// template, indexed `[q][r]`.
    pub(crate) fn correlate_all(&self, carrier: &CarrierVector) -> Result<Vec<Vec<f64>>> {
        if carrier.len() != self.period() {
            return Err(Error::CarrierLength {
                expected: self.period(),
                actual: carrier.len(),
            });
        }
        let tau = self.lane_len();
        let lanes: Vec<Vec<Complex64>> = carrier
            .values()
            .chunks_exact(tau)
            .map(|lane| {
                let mut buf: Vec<Complex64> =
                    lane.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                self.fft.process(&mut buf);
                buf
            })
            .collect();

        let scale = 1.0 / tau as f64;
        Ok(self
            .spectra
            .iter()
            .map(|family| {
                let mut acc = vec![Complex64::new(0.0, 0.0); tau];
                for (x, c) in lanes.iter().zip(family) {
                    for ((a, xv), cv) in acc.iter_mut().zip(x).zip(c) {
                        *a += xv * cv.conj();
                    }
                }
                self.ifft.process(&mut acc);
                acc.iter().map(|z| z.re * scale).collect()
            })
            .collect())
    }
}
