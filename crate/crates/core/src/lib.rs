//! Baseband OFDM simulation for studying peak-to-average power ratio (PAPR)
//! and two distortionless ways of reducing it: selected mapping (SLM) and
//! partial transmit sequences (PTS).
//!
//! The pipeline for one frame is
//!
//! 1. [`modulation`]: bits → BPSK/QPSK symbols on `N` subcarriers,
//! 2. [`ofdm`]: zero-padded unitary inverse DFT ([`dft`]) → `L·N` time samples,
//! 3. [`ofdm::papr`]: peak power over mean power,
//! 4. optionally [`slm`] or [`pts`] to pick a lower-PAPR representation,
//!
//! and [`experiment`] repeats it over seeded random frames to estimate the
//! PAPR CCDF, which [`stats`] compares with the closed-form curves.
//!
//! ```
//! use ofdm_papr::modulation::{FrequencyFrame, ModulationScheme};
//! use ofdm_papr::ofdm::synthesize;
//!
//! // Eight identical symbols add up coherently at t = 0: PAPR = N.
//! let freq = FrequencyFrame::from_bits(&[0; 16], ModulationScheme::Qpsk)?;
//! let papr = synthesize(&freq, 1)?.papr();
//! assert!((papr.linear - 8.0).abs() < 1e-12);
//! # Ok::<(), ofdm_papr::Error>(())
//! ```
//!
//! The `book/` directory in the repository walks through the model and the
//! algorithms; its code listings run as doctests of this crate.

pub mod cli;
pub mod dft;
mod error;
pub mod experiment;
pub mod modulation;
pub mod ofdm;
pub mod pts;
pub mod report;
pub mod slm;
pub mod stats;
pub mod stream;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// A complex baseband value: a subcarrier symbol or a time sample.
pub type ComplexSample = Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/signal-model.md")]
    mod signal_model {}
    #[doc = include_str!("../../../book/src/papr-and-ccdf.md")]
    mod papr_and_ccdf {}
    #[doc = include_str!("../../../book/src/selected-mapping.md")]
    mod selected_mapping {}
    #[doc = include_str!("../../../book/src/partial-transmit-sequences.md")]
    mod partial_transmit_sequences {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
