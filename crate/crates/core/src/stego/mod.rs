//! Embedding and informed extraction.
//!
//! Embedding adds `α·y_t` to the `T` keyed mid-band DCT coefficients of the
//! cover's luma, where `y` is the spread carrier of all channels. Extraction
//! takes the same coefficients from cover and stego, despreads their
//! difference and decides `2N` nibbles per channel. Sender and receiver share
//! every [`StegoParams`] field out of band; nothing is written in-band.

mod framing;
mod params;

pub use framing::{frame_message, unframe, MessageFraming};
pub use params::{Band, Scheme, StegoParams, CCC_ORDER};

use serde::{Serialize, Serializer};

use crate::analysis::psnr;
use crate::error::{Error, Result};
use crate::imaging::{
    dct2, idct2, rgb_to_ycbcr, select_coefficients, ycbcr_to_rgb, CoefficientSelection, RgbImage,
    YcbcrPlanes,
};
use crate::modem::{
    amplitude, bytes_to_symbols, decide, despread, spread, symbols_to_bytes, CarrierVector,
    SlotGrid, SymbolStream,
};

/// Parameters bound to a ready slot grid.
#[derive(Debug, Clone)]
pub struct StegoCodec {
    params: StegoParams,
    grid: SlotGrid,
}

impl StegoCodec {
    pub fn new(params: StegoParams) -> Result<Self> {
        params.validate()?;
        let grid = SlotGrid::new(params.scheme.code()?, params.chip_interval, params.channels)?;
        Ok(Self { params, grid })
    }

    /// Same grid, different key. Avoids regenerating the code.
    pub fn with_key(&self, key: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.params.key = key.into();
        out
    }

    /// Same grid, different `N`.
    pub fn with_fragment_bytes(&self, fragment_bytes: usize) -> Self {
        let mut out = self.clone();
        out.params.fragment_bytes = fragment_bytes;
        out
    }

    pub fn params(&self) -> &StegoParams {
        &self.params
    }

    pub fn grid(&self) -> &SlotGrid {
        &self.grid
    }

    pub fn selection(&self, height: usize, width: usize) -> Result<CoefficientSelection> {
        let ranks = self.params.band.ranks(height * width);
        select_coefficients(&self.params.key, (height, width), ranks, self.grid.period())
    }

    /// Spread carrier `y` (before scaling by α) for a framed message.
    pub fn carrier(&self, framing: &MessageFraming) -> Result<CarrierVector> {
        let streams: Vec<SymbolStream> = framing
            .fragments()
            .iter()
            .enumerate()
            .map(|(i, f)| SymbolStream::from_bytes(i, f))
            .collect();
        spread(&self.grid, &streams)
    }

    fn frame(&self, message: &[u8]) -> Result<MessageFraming> {
        frame_message(message, self.params.channels, self.params.fragment_bytes)
    }

    /// Real-valued embedding: only the luma plane changes and nothing is
    /// rounded.
    pub fn embed_planes(&self, cover: &YcbcrPlanes, message: &[u8]) -> Result<YcbcrPlanes> {
        let framing = self.frame(message)?;
        let carrier = self.carrier(&framing)?;
        self.apply_carrier(cover, &carrier)
    }

    fn apply_carrier(&self, cover: &YcbcrPlanes, carrier: &CarrierVector) -> Result<YcbcrPlanes> {
        let selection = self.selection(cover.height(), cover.width())?;
        let mut coeffs = dct2(&cover.y);
        let alpha = self.params.alpha;
        for (&(r, c), &y) in selection.positions().iter().zip(carrier.values()) {
            coeffs.set(r, c, coeffs.get(r, c) + alpha * y);
        }
        Ok(YcbcrPlanes {
            y: idct2(&coeffs),
            cb: cover.cb.clone(),
            cr: cover.cr.clone(),
        })
    }

    pub fn embed(&self, cover: &RgbImage, message: &[u8]) -> Result<(RgbImage, EmbedReport)> {
        let framing = self.frame(message)?;
        let carrier = self.carrier(&framing)?;
        let planes = self.apply_carrier(&rgb_to_ycbcr(cover), &carrier)?;
        let stego = ycbcr_to_rgb(&planes);
        let n_symbols = 2 * self.params.fragment_bytes;
        let report = EmbedReport {
            psnr_db: psnr(cover, &stego)?,
            carrier_energy: self.params.alpha * self.params.alpha * carrier.energy(),
            collisions: self
                .grid
                .collisions(&vec![n_symbols; self.params.channels])?,
            symbols_per_channel: n_symbols,
            params: ParamsEcho::new(&self.params, &self.grid),
        };
        Ok((stego, report))
    }

    /// Difference `d^s(t) − d^o(t)` over the keyed selection.
    pub fn difference(&self, cover: &YcbcrPlanes, stego: &YcbcrPlanes) -> Result<CarrierVector> {
        if cover.width() != stego.width() || cover.height() != stego.height() {
            return Err(Error::DimensionMismatch(
                cover.width(),
                cover.height(),
                stego.width(),
                stego.height(),
            ));
        }
        let selection = self.selection(cover.height(), cover.width())?;
        let (co, st) = (dct2(&cover.y), dct2(&stego.y));
        Ok(CarrierVector::new(
            selection
                .positions()
                .iter()
                .map(|&(r, c)| st.get(r, c) - co.get(r, c))
                .collect(),
        ))
    }

    pub fn extract_planes(&self, cover: &YcbcrPlanes, stego: &YcbcrPlanes) -> Result<Extraction> {
        let diff = self.difference(cover, stego)?;
        let count = 2 * self.params.fragment_bytes;
        let scale = self.params.alpha * self.grid.peak();
        let mut raw = Vec::with_capacity(self.params.channels);
        let mut fragments = Vec::with_capacity(self.params.channels);
        for i in 0..self.params.channels {
            let r = despread(&self.grid, &diff, i, count)?;
            let symbols: Vec<u8> = r
                .iter()
                .map(|&v| decide(v, self.params.alpha, self.grid.peak()))
                .collect();
            fragments.push(symbols_to_bytes(&symbols)?);
            raw.push(r);
        }
        Ok(Extraction {
            raw,
            fragments,
            scale,
        })
    }

    pub fn extract_detailed(&self, cover: &RgbImage, stego: &RgbImage) -> Result<Extraction> {
        self.extract_planes(&rgb_to_ycbcr(cover), &rgb_to_ycbcr(stego))
    }

    pub fn extract(&self, cover: &RgbImage, stego: &RgbImage) -> Result<Vec<u8>> {
        Ok(self.extract_detailed(cover, stego)?.message())
    }
}

pub fn embed(
    cover: &RgbImage,
    message: &[u8],
    params: &StegoParams,
) -> Result<(RgbImage, EmbedReport)> {
    StegoCodec::new(params.clone())?.embed(cover, message)
}

pub fn extract(cover: &RgbImage, stego: &RgbImage, params: &StegoParams) -> Result<Vec<u8>> {
    StegoCodec::new(params.clone())?.extract(cover, stego)
}

/// Matched-filter outputs and decisions for every channel.
#[derive(Debug, Clone, PartialEq)]
pub struct Extraction {
    raw: Vec<Vec<f64>>,
    fragments: Vec<Vec<u8>>,
    scale: f64,
}

impl Extraction {
    /// `raw()[i][k]`: correlator output for symbol `k` of channel `i`.
    pub fn raw(&self) -> &[Vec<f64>] {
        &self.raw
    }

    pub fn fragments(&self) -> &[Vec<u8>] {
        &self.fragments
    }

    /// All `M·N` decided bytes, padding included.
    pub fn payload(&self) -> Vec<u8> {
        self.fragments.concat()
    }

    pub fn message(&self) -> Vec<u8> {
        unframe(&self.fragments)
    }

    /// Per-symbol deviation of the normalized correlator output from the
    /// level that was sent, in units of the level spacing.
    pub fn deviations(&self, sent: &MessageFraming) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for (raw, frag) in self.raw.iter().zip(sent.fragments()) {
            for (&r, &x) in raw.iter().zip(&bytes_to_symbols(frag)) {
                out.push(r / self.scale - amplitude(x)?);
            }
        }
        Ok(out)
    }

    /// Symbols whose deviation reaches half a level, i.e. whose decision is
    /// not guaranteed.
    pub fn margin_violations(&self, sent: &MessageFraming) -> Result<usize> {
        Ok(self
            .deviations(sent)?
            .iter()
            .filter(|d| d.abs() >= 0.5)
            .count())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamsEcho {
    pub scheme: Scheme,
    pub alpha: f64,
    pub channels: usize,
    pub fragment_bytes: usize,
    pub chip_interval: usize,
    pub band: Band,
    pub period: usize,
    pub amplitude: f64,
}

impl ParamsEcho {
    pub fn new(params: &StegoParams, grid: &SlotGrid) -> Self {
        Self {
            scheme: params.scheme,
            alpha: params.alpha,
            channels: params.channels,
            fragment_bytes: params.fragment_bytes,
            chip_interval: params.chip_interval,
            band: params.band,
            period: grid.period(),
            amplitude: grid.peak(),
        }
    }
}

/// Serializes infinities as the string `"inf"`; JSON has no such number.
pub(crate) fn finite_or_inf<S: Serializer>(v: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    if v.is_infinite() {
        s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
    } else {
        s.serialize_f64(*v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmbedReport {
    #[serde(serialize_with = "finite_or_inf")]
    pub psnr_db: f64,
    /// `α²·Σ y_t²`, the energy added to the coefficient plane.
    pub carrier_energy: f64,
    pub collisions: usize,
    pub symbols_per_channel: usize,
    pub params: ParamsEcho,
}

impl EmbedReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }
}
