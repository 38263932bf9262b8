//! Oversampled OFDM synthesis and the PAPR metric.
//!
//! Oversampling by `L` zero-pads the spectrum in the middle, so subcarriers
//! `N/2..N` keep their role as negative frequencies and the output is the
//! trigonometric interpolation of the Nyquist-rate frame:
//!
//! ```text
//! [X_0 … X_{N/2-1}, 0 × (L-1)N, X_{N/2} … X_{N-1}]  --IDFT-->  x_0 … x_{LN-1}
//! ```
//!
//! The inverse transform keeps its unitary `1/√(LN)` factor. PAPR is a
//! ratio, so nothing is rescaled afterwards.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use std::rc::Rc;

use crate::dft::{cached_plan, check_finite, DftPlan};
use crate::error::{Error, Result};
use crate::modulation::FrequencyFrame;

/// Time-domain samples of one OFDM symbol, `L·N` long.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeFrame {
    samples: Vec<Complex64>,
    oversample: usize,
    n_subcarriers: usize,
}

impl TimeFrame {
    /// Build a frame from raw samples. Fails if the length is not
    /// `oversample · n_subcarriers`, any sample is non-finite, or the frame
    /// is all zeros.
    pub fn new(samples: Vec<Complex64>, oversample: usize, n_subcarriers: usize) -> Result<Self> {
        let expected = oversample * n_subcarriers;
        if oversample == 0 || samples.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: samples.len(),
            });
        }
        check_finite(&samples)?;
        if samples.iter().all(|s| s.norm_sqr() == 0.0) {
            return Err(Error::ZeroFrame);
        }
        Ok(Self {
            samples,
            oversample,
            n_subcarriers,
        })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn oversample(&self) -> usize {
        self.oversample
    }

    pub fn n_subcarriers(&self) -> usize {
        self.n_subcarriers
    }

    pub fn into_samples(self) -> Vec<Complex64> {
        self.samples
    }

    pub fn papr(&self) -> PaprSample {
        // The constructor guarantees a nonzero frame.
        papr_of(&self.samples).expect("TimeFrame is never all zeros")
    }
}

/// Peak-to-average power ratio of one frame.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaprSample {
    pub linear: f64,
    pub db: f64,
}

impl PaprSample {
    pub fn from_linear(linear: f64) -> Self {
        Self {
            linear,
            db: 10.0 * linear.log10(),
        }
    }
}

/// `max |x_n|² / mean |x_n|²` over the samples, plus its dB form.
pub fn papr(frame: &TimeFrame) -> PaprSample {
    frame.papr()
}

/// PAPR of a raw sample slice. Errors on an empty or all-zero slice.
pub fn papr_of(samples: &[Complex64]) -> Result<PaprSample> {
    let (peak, total) = samples.iter().fold((0.0f64, 0.0f64), |(peak, total), s| {
        let p = s.norm_sqr();
        (peak.max(p), total + p)
    });
    if total == 0.0 {
        return Err(Error::ZeroFrame);
    }
    let mean = total / samples.len() as f64;
    // Rounding can put the peak a hair under the mean for flat frames.
    Ok(PaprSample::from_linear((peak / mean).max(1.0)))
}

/// Zero-pad a spectrum from `N` to `L·N` bins, splitting at `N/2`.
pub(crate) fn pad_spectrum(symbols: &[Complex64], oversample: usize) -> Vec<Complex64> {
    let n = symbols.len();
    let half = n.div_ceil(2);
    let mut padded = vec![Complex64::new(0.0, 0.0); n * oversample];
    padded[..half].copy_from_slice(&symbols[..half]);
    padded[n * oversample - (n - half)..].copy_from_slice(&symbols[half..]);
    padded
}

/// Synthesize the `L`-times oversampled time frame of `freq`.
pub fn synthesize(freq: &FrequencyFrame, oversample: usize) -> Result<TimeFrame> {
    let plan = plan_for(freq.n_subcarriers(), oversample)?;
    synthesize_with(&plan, freq.symbols(), oversample)
}

pub(crate) fn plan_for(n_subcarriers: usize, oversample: usize) -> Result<Rc<DftPlan>> {
    if oversample == 0 {
        return Err(Error::InvalidParameter("oversampling factor must be at least 1".into()));
    }
    cached_plan(n_subcarriers * oversample)
}

/// Synthesis with a caller-held plan of length `L·N`.
pub(crate) fn synthesize_with(plan: &DftPlan, symbols: &[Complex64], oversample: usize) -> Result<TimeFrame> {
    let samples = synthesize_raw(plan, symbols, oversample)?;
    TimeFrame::new(samples, oversample, symbols.len())
}

/// Like [`synthesize_with`] but allows an all-zero result (sub-block spectra).
pub(crate) fn synthesize_raw(plan: &DftPlan, symbols: &[Complex64], oversample: usize) -> Result<Vec<Complex64>> {
    let mut padded = pad_spectrum(symbols, oversample);
    plan.inverse_in_place(&mut padded)?;
    Ok(padded)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn frame(symbols: Vec<Complex64>) -> FrequencyFrame {
        FrequencyFrame::new(symbols).unwrap()
    }

    #[test]
    fn nyquist_rate_reduces_to_inverse_dft() {
        let t = synthesize(&frame(vec![c(1., 0.); 4]), 1).unwrap();
        let expected = [c(2., 0.), c(0., 0.), c(0., 0.), c(0., 0.)];
        for (a, e) in t.samples().iter().zip(expected) {
            assert!((a - e).norm() < 1e-15);
        }
    }

    #[test]
    fn padding_layout() {
        let s: Vec<_> = (1..=4).map(|k| c(k as f64, 0.)).collect();
        let p = pad_spectrum(&s, 3);
        let re: Vec<f64> = p.iter().map(|x| x.re).collect();
        assert_eq!(re, vec![1., 2., 0., 0., 0., 0., 0., 0., 0., 0., 3., 4.]);
    }

    #[test]
    fn single_tone_stays_flat_when_oversampled() {
        for k in 0..8 {
            let mut s = vec![c(0., 0.); 8];
            s[k] = c(0., -1.);
            let t = synthesize(&frame(s), 2).unwrap();
            assert_eq!(t.samples().len(), 16);
            let mag0 = t.samples()[0].norm();
            assert!(t.samples().iter().all(|x| (x.norm() - mag0).abs() < 1e-14));
            assert!((t.papr().linear - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn papr_examples() {
        let flat = TimeFrame::new(vec![c(0., 2.); 8], 1, 8).unwrap();
        assert_eq!(flat.papr().linear, 1.0);
        assert_eq!(flat.papr().db, 0.0);

        let impulse = TimeFrame::new(vec![c(2., 0.), c(0., 0.), c(0., 0.), c(0., 0.)], 1, 4).unwrap();
        let p = papr(&impulse);
        assert_eq!(p.linear, 4.0);
        assert!((p.db - 6.020599913279624).abs() < 1e-12);

        let all_ones = synthesize(&frame(vec![c(1., 0.); 64]), 1).unwrap();
        let p = all_ones.papr();
        assert!((p.linear - 64.0).abs() < 1e-9);
        assert!((p.db - 18.06179973983887).abs() < 1e-9);
    }

    #[test]
    fn zero_frames_are_rejected() {
        assert!(matches!(
            TimeFrame::new(vec![c(0., 0.); 4], 1, 4),
            Err(Error::ZeroFrame)
        ));
        assert!(matches!(papr_of(&[c(0., 0.); 4]), Err(Error::ZeroFrame)));
        assert!(matches!(
            synthesize(&frame(vec![c(0., 0.); 4]), 2),
            Err(Error::ZeroFrame)
        ));
    }

    #[test]
    fn rejects_bad_oversampling() {
        let f = frame(vec![c(1., 0.); 4]);
        assert!(matches!(synthesize(&f, 3), Err(Error::NotPowerOfTwo(12))));
        assert!(matches!(synthesize(&f, 0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn time_frame_length_checked() {
        assert!(matches!(
            TimeFrame::new(vec![c(1., 0.); 5], 2, 4),
            Err(Error::LengthMismatch { expected: 8, actual: 5 })
        ));
    }
}
