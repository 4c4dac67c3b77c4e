//! Image quality, extraction accuracy and the experiment sweeps.

mod metrics;
mod sweep;

pub use metrics::{extraction_probability, psnr};
pub use sweep::{
    run_p_vs_m, run_p_vs_n, run_psnr_sweep, run_trial, trial_key, trial_payload, PsnrRow, PvsMRow,
    PvsNRow, Sweep, SweepOptions, TrialReport,
};
