use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sequence length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("code family shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid sequence: {0}")]
    InvalidSequence(String),

    #[error("period {period} is shorter than sequence length {length}")]
    PeriodTooShort { period: usize, length: usize },

    #[error("order {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("generated code failed validation: {0}")]
    ConstructionFailed(String),

    #[error("invalid LFSR: {0}")]
    InvalidLfsr(String),

    #[error("polynomial {taps:#x} is not primitive: state cycle {cycle} < {expected}")]
    NotPrimitive {
        taps: u32,
        cycle: usize,
        expected: usize,
    },

    #[error("malformed code file at line {line}: {reason}")]
    CodeFormat { line: usize, reason: String },

    #[error("channel {channel} out of range for {channels} channel(s)")]
    ChannelOutOfRange { channel: usize, channels: usize },

    #[error("slot (family {family}, shift {shift}) outside grid of {families} families x {lanes} shifts")]
    SlotOutOfRange {
        family: usize,
        shift: usize,
        families: usize,
        lanes: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("symbol {0} outside 0..=15")]
    SymbolOutOfRange(u8),

    #[error("expected {expected} symbol streams, got {actual}")]
    StreamCount { expected: usize, actual: usize },

    #[error("odd symbol count {0} cannot be reassembled into bytes")]
    OddSymbolCount(usize),

    #[error("carrier length {actual} does not match period {expected}")]
    CarrierLength { expected: usize, actual: usize },

    #[error("bmp: {0}")]
    Bmp(String),

    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),

    #[error("coefficient band [{lo}, {hi}) holds {available} candidates, {requested} requested")]
    BandTooSmall {
        lo: usize,
        hi: usize,
        available: usize,
        requested: usize,
    },

    #[error("invalid band: {0}")]
    InvalidBand(String),

    #[error("message of {len} bytes exceeds M·N = {capacity}")]
    MessageTooLong { len: usize, capacity: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
