//! Unitary radix-2 discrete Fourier transform.
//!
//! The inverse transform is the synthesis kernel for every OFDM frame:
//!
//! ```text
//! x_n = (1/√P) Σ_{k=0}^{P-1} X_k e^{+j2πnk/P},   n = 0..P-1
//! ```
//!
//! and the forward transform uses the conjugate kernel with the same
//! `1/√P` factor, so the pair is unitary and Parseval's identity holds
//! without rescaling.
//!
//! [`DftPlan`] caches twiddles and the bit-reversal permutation for one
//! length. The free functions build a throwaway plan per call.

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Forward,
    Inverse,
}

/// Precomputed state for transforms of one power-of-two length.
#[derive(Clone, Debug)]
pub struct DftPlan {
    len: usize,
    // e^{+j2πk/P} for k in 0..P/2; the forward pass conjugates on the fly.
    twiddles: Vec<Complex64>,
    bit_reverse: Vec<usize>,
    scale: f64,
}

impl DftPlan {
    pub fn new(len: usize) -> Result<Self> {
        if !len.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(len));
        }
        let bits = len.trailing_zeros();
        let twiddles = (0..len / 2)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / len as f64))
            .collect();
        let bit_reverse = (0..len)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (usize::BITS - bits)
                }
            })
            .collect();
        Ok(Self {
            len,
            twiddles,
            bit_reverse,
            scale: 1.0 / (len as f64).sqrt(),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place inverse transform (positive exponent, `1/√P` scaling).
    pub fn inverse_in_place(&self, data: &mut [Complex64]) -> Result<()> {
        self.run(data, Direction::Inverse)
    }

    /// In-place forward transform (negative exponent, `1/√P` scaling).
    pub fn forward_in_place(&self, data: &mut [Complex64]) -> Result<()> {
        self.run(data, Direction::Forward)
    }

    pub fn inverse(&self, data: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = data.to_vec();
        self.inverse_in_place(&mut out)?;
        Ok(out)
    }

    pub fn forward(&self, data: &[Complex64]) -> Result<Vec<Complex64>> {
        let mut out = data.to_vec();
        self.forward_in_place(&mut out)?;
        Ok(out)
    }

    fn run(&self, data: &mut [Complex64], direction: Direction) -> Result<()> {
        if data.len() != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual: data.len(),
            });
        }
        check_finite(data)?;

        for (i, &j) in self.bit_reverse.iter().enumerate() {
            if i < j {
                data.swap(i, j);
            }
        }

        let mut half = 1;
        while half < self.len {
            let stride = self.len / (2 * half);
            for start in (0..self.len).step_by(2 * half) {
                for k in 0..half {
                    let w = self.twiddles[k * stride];
                    let w = match direction {
                        Direction::Inverse => w,
                        Direction::Forward => w.conj(),
                    };
                    let a = data[start + k];
                    let b = data[start + k + half] * w;
                    data[start + k] = a + b;
                    data[start + k + half] = a - b;
                }
            }
            half *= 2;
        }

        for x in data.iter_mut() {
            *x *= self.scale;
        }
        Ok(())
    }
}

thread_local! {
    static PLANS: RefCell<HashMap<usize, Rc<DftPlan>>> = RefCell::new(HashMap::new());
}

/// Per-thread shared plan for `len`.
pub(crate) fn cached_plan(len: usize) -> Result<Rc<DftPlan>> {
    PLANS.with(|plans| {
        if let Some(plan) = plans.borrow().get(&len) {
            return Ok(Rc::clone(plan));
        }
        let plan = Rc::new(DftPlan::new(len)?);
        plans.borrow_mut().insert(len, Rc::clone(&plan));
        Ok(plan)
    })
}

/// Unitary inverse DFT of a power-of-two length sequence.
pub fn inverse_dft(freq: &[Complex64]) -> Result<Vec<Complex64>> {
    cached_plan(freq.len())?.inverse(freq)
}

/// Unitary forward DFT; undoes [`inverse_dft`].
pub fn forward_dft(time: &[Complex64]) -> Result<Vec<Complex64>> {
    cached_plan(time.len())?.forward(time)
}

pub(crate) fn check_finite(data: &[Complex64]) -> Result<()> {
    match data.iter().position(|x| !x.re.is_finite() || !x.im.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}
