use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("length {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("bit count {bits} is not a multiple of {bits_per_symbol} bits per symbol")]
    BitCount { bits: usize, bits_per_symbol: usize },

    #[error("value {value} at position {position} is not a bit")]
    InvalidBit { position: usize, value: u8 },

    #[error("non-finite sample at index {0}")]
    NonFinite(usize),

    #[error("frame is all zeros; PAPR is undefined")]
    ZeroFrame,

    #[error("{blocks} sub-blocks do not divide {subcarriers} subcarriers")]
    Divisibility { subcarriers: usize, blocks: usize },

    #[error("unsupported phase order {0}; expected 2 or 4")]
    UnsupportedPhaseOrder(usize),

    #[error("no samples to estimate a CCDF from")]
    EmptySamples,

    #[error("thresholds must be strictly ascending (index {0})")]
    ThresholdsNotAscending(usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("failed to write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
