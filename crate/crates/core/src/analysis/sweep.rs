//! Seeded multi-trial sweeps. Trial `t` uses seed `master_seed + t`, which
//! fixes both its key and its uniform random payload of `M·N` bytes.

use std::io::Write;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{extraction_probability, psnr};
use crate::error::Result;
use crate::imaging::{rgb_to_ycbcr, ycbcr_to_rgb, RgbImage, YcbcrPlanes};
use crate::stego::{finite_or_inf, frame_message, Scheme, StegoCodec, StegoParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepOptions {
    pub trials: usize,
    pub master_seed: u64,
    /// Skip 8-bit quantization: extract from the real-valued planes.
    pub bypass_quantization: bool,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            trials: 10,
            master_seed: 0,
            bypass_quantization: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub scheme: Scheme,
    pub alpha: f64,
    pub channels: usize,
    pub fragment_bytes: usize,
    pub chip_interval: usize,
    #[serde(serialize_with = "finite_or_inf")]
    pub psnr_db: f64,
    pub correct_prob: f64,
    pub collisions: usize,
    pub margin_violations: usize,
    pub seed: u64,
}

pub fn trial_key(seed: u64) -> String {
    format!("trial-{seed}")
}

pub fn trial_payload(len: usize, seed: u64) -> Vec<u8> {
    let mut out = vec![0u8; len];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut out);
    out
}

/// One embed/extract cycle. `P` compares all `M·N` payload bytes before
/// padding is stripped, so a random payload ending in `0x00` is still
/// counted in full.
pub fn run_trial(
    codec: &StegoCodec,
    cover: &RgbImage,
    cover_planes: &YcbcrPlanes,
    seed: u64,
    bypass_quantization: bool,
) -> Result<TrialReport> {
    let codec = codec.with_key(trial_key(seed));
    let p = codec.params();
    let sent = trial_payload(p.capacity(), seed);
    let framing = frame_message(&sent, p.channels, p.fragment_bytes)?;
    let stego_planes = codec.embed_planes(cover_planes, &sent)?;
    let stego = ycbcr_to_rgb(&stego_planes);
    let extraction = if bypass_quantization {
        codec.extract_planes(cover_planes, &stego_planes)?
    } else {
        codec.extract_planes(cover_planes, &rgb_to_ycbcr(&stego))?
    };
    let n_symbols = 2 * p.fragment_bytes;
    Ok(TrialReport {
        scheme: p.scheme,
        alpha: p.alpha,
        channels: p.channels,
        fragment_bytes: p.fragment_bytes,
        chip_interval: p.chip_interval,
        psnr_db: psnr(cover, &stego)?,
        correct_prob: extraction_probability(&sent, &extraction.payload()),
        collisions: codec.grid().collisions(&vec![n_symbols; p.channels])?,
        margin_violations: extraction.margin_violations(&framing)?,
        seed,
    })
}

fn run_trials(
    codec: &StegoCodec,
    cover: &RgbImage,
    planes: &YcbcrPlanes,
    opts: &SweepOptions,
) -> Result<Vec<TrialReport>> {
    (0..opts.trials as u64)
        .map(|t| {
            run_trial(
                codec,
                cover,
                planes,
                opts.master_seed.wrapping_add(t),
                opts.bypass_quantization,
            )
        })
        .collect()
}

fn mean(xs: impl Iterator<Item = f64>) -> f64 {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        sum / n as f64
    }
}

/// Population standard deviation; 0 when every value is the same infinity.
fn std_dev(xs: &[f64]) -> f64 {
    if xs.iter().all(|&x| x == xs[0]) {
        return 0.0;
    }
    let m = mean(xs.iter().copied());
    mean(xs.iter().map(|x| (x - m) * (x - m))).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsnrRow {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(serialize_with = "finite_or_inf")]
    pub mean_psnr_db: f64,
    pub std_psnr_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvsNRow {
    pub scheme: Scheme,
    #[serde(rename = "N")]
    pub n: usize,
    pub mean_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PvsMRow {
    pub scheme: Scheme,
    #[serde(rename = "M")]
    pub m: usize,
    pub mean_p: f64,
}

/// Aggregated rows plus every trial behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct Sweep<R> {
    pub rows: Vec<R>,
    pub trials: Vec<TrialReport>,
}

impl<R: Serialize> Sweep<R> {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(&self.rows, out)
    }

    pub fn write_trials_csv<W: Write>(&self, out: W) -> Result<()> {
        write_rows(&self.trials, out)
    }
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn with_shape(base: &StegoParams, scheme: Scheme, channels: usize, n: usize) -> StegoParams {
    StegoParams {
        scheme,
        channels,
        fragment_bytes: n,
        ..base.clone()
    }
}

/// Mean and spread of PSNR over trials for each `N`, scheme and `M` taken
/// from `base`.
pub fn run_psnr_sweep(
    cover: &RgbImage,
    base: &StegoParams,
    n_list: &[usize],
    opts: &SweepOptions,
) -> Result<Sweep<PsnrRow>> {
    let planes = rgb_to_ycbcr(cover);
    let codec = StegoCodec::new(base.clone())?;
    let mut n_sorted = n_list.to_vec();
    n_sorted.sort_unstable();
    let mut sweep = Sweep {
        rows: Vec::new(),
        trials: Vec::new(),
    };
    for n in n_sorted {
        let codec = codec.with_fragment_bytes(n);
        let trials = run_trials(&codec, cover, &planes, opts)?;
        let values: Vec<f64> = trials.iter().map(|t| t.psnr_db).collect();
        sweep.rows.push(PsnrRow {
            n,
            mean_psnr_db: mean(values.iter().copied()),
            std_psnr_db: std_dev(&values),
        });
        sweep.trials.extend(trials);
    }
    Ok(sweep)
}

/// Mean `P` for each scheme and `N`, with `M` taken from `base`.
pub fn run_p_vs_n(
    cover: &RgbImage,
    schemes: &[Scheme],
    base: &StegoParams,
    n_list: &[usize],
    opts: &SweepOptions,
) -> Result<Sweep<PvsNRow>> {
    let planes = rgb_to_ycbcr(cover);
    let mut sweep = Sweep {
        rows: Vec::new(),
        trials: Vec::new(),
    };
    for &scheme in schemes {
        let codec = StegoCodec::new(with_shape(base, scheme, base.channels, base.fragment_bytes))?;
        for &n in n_list {
            let codec = codec.with_fragment_bytes(n);
            let trials = run_trials(&codec, cover, &planes, opts)?;
            sweep.rows.push(PvsNRow {
                scheme,
                n,
                mean_p: mean(trials.iter().map(|t| t.correct_prob)),
            });
            sweep.trials.extend(trials);
        }
    }
    Ok(sweep)
}

/// Mean `P` for each scheme and `M` at fixed `N`.
pub fn run_p_vs_m(
    cover: &RgbImage,
    schemes: &[Scheme],
    base: &StegoParams,
    n: usize,
    m_list: &[usize],
    opts: &SweepOptions,
) -> Result<Sweep<PvsMRow>> {
    let planes = rgb_to_ycbcr(cover);
    let mut sweep = Sweep {
        rows: Vec::new(),
        trials: Vec::new(),
    };
    for &scheme in schemes {
        for &m in m_list {
            let codec = StegoCodec::new(with_shape(base, scheme, m, n))?;
            let trials = run_trials(&codec, cover, &planes, opts)?;
            sweep.rows.push(PvsMRow {
                scheme,
                m,
                mean_p: mean(trials.iter().map(|t| t.correct_prob)),
            });
            sweep.trials.extend(trials);
        }
    }
    Ok(sweep)
}
