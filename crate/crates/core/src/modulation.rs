//! BPSK/QPSK constellation mapping and random frequency-domain frames.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dft::check_finite;
use crate::error::{Error, Result};

/// Constellation used on every subcarrier.
///
/// Both alphabets are axis-aligned and unit-magnitude: BPSK uses `{+1, -1}`
/// and QPSK uses `{+1, +j, -1, -j}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModulationScheme {
    Bpsk,
    Qpsk,
}

// QPSK Gray table indexed by the bit pair (b0 << 1) | b1: 00, 01, 10, 11.
const QPSK_GRAY: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
    Complex64::new(-1.0, 0.0),
];

const BPSK: [Complex64; 2] = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)];

impl ModulationScheme {
    pub fn bits_per_symbol(self) -> usize {
        match self {
            Self::Bpsk => 1,
            Self::Qpsk => 2,
        }
    }

    /// Constellation points indexed by their bit pattern.
    pub fn constellation(self) -> &'static [Complex64] {
        match self {
            Self::Bpsk => &BPSK,
            Self::Qpsk => &QPSK_GRAY,
        }
    }
}

impl fmt::Display for ModulationScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bpsk => "bpsk",
            Self::Qpsk => "qpsk",
        })
    }
}

impl FromStr for ModulationScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bpsk" => Ok(Self::Bpsk),
            "qpsk" => Ok(Self::Qpsk),
            other => Err(Error::InvalidParameter(format!("unknown modulation `{other}`"))),
        }
    }
}

/// Map a bit stream onto constellation symbols, first bit most significant
/// within each symbol.
///
/// BPSK: `0 → +1`, `1 → -1`. QPSK (Gray): `00 → +1`, `01 → +j`, `11 → -1`,
/// `10 → -j`.
pub fn map_bits(bits: &[u8], scheme: ModulationScheme) -> Result<Vec<Complex64>> {
    let per = scheme.bits_per_symbol();
    if bits.len() % per != 0 {
        return Err(Error::BitCount {
            bits: bits.len(),
            bits_per_symbol: per,
        });
    }
    if let Some(position) = bits.iter().position(|&b| b > 1) {
        return Err(Error::InvalidBit {
            position,
            value: bits[position],
        });
    }
    let table = scheme.constellation();
    Ok(bits
        .chunks_exact(per)
        .map(|chunk| {
            let index = chunk.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
            table[index]
        })
        .collect())
}

/// One OFDM symbol in the frequency domain: `N` subcarrier values `X_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrequencyFrame {
    symbols: Vec<Complex64>,
}

impl FrequencyFrame {
    /// Wrap a spectrum. The length must be a power of two and every value
    /// finite.
    pub fn new(symbols: Vec<Complex64>) -> Result<Self> {
        if !symbols.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(symbols.len()));
        }
        check_finite(&symbols)?;
        Ok(Self { symbols })
    }

    /// Modulate `bits` directly into a frame.
    pub fn from_bits(bits: &[u8], scheme: ModulationScheme) -> Result<Self> {
        Self::new(map_bits(bits, scheme)?)
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    pub fn n_subcarriers(&self) -> usize {
        self.symbols.len()
    }

    pub fn into_symbols(self) -> Vec<Complex64> {
        self.symbols
    }
}

/// Draw `n` uniformly random bits-per-symbol groups from `rng` and modulate
/// them. The frame is a pure function of `(n, scheme, rng state)`.
pub fn random_frame<R: Rng + ?Sized>(n: usize, scheme: ModulationScheme, rng: &mut R) -> Result<FrequencyFrame> {
    if !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let bits: Vec<u8> = (0..n * scheme.bits_per_symbol())
        .map(|_| rng.random::<bool>() as u8)
        .collect();
    FrequencyFrame::from_bits(&bits, scheme)
}
