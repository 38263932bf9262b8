//! Reference implementations used only by tests. Nothing here calls the
//! library's transform, so the checks stay independent of it.
#![allow(dead_code)]

use std::f64::consts::PI;

use ofdm_papr::Complex64;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Direct O(P²) evaluation of `x_n = (1/√P) Σ_k X_k e^{+j2πnk/P}`.
pub fn naive_inverse_dft(freq: &[Complex64]) -> Vec<Complex64> {
    naive_dft(freq, 1.0)
}

pub fn naive_forward_dft(time: &[Complex64]) -> Vec<Complex64> {
    naive_dft(time, -1.0)
}

fn naive_dft(input: &[Complex64], sign: f64) -> Vec<Complex64> {
    let p = input.len();
    let scale = 1.0 / (p as f64).sqrt();
    (0..p)
        .map(|n| {
            input
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    // Reduce nk mod P before the trig call to keep the angle small.
                    let phase = 2.0 * PI * ((n * k) % p) as f64 / p as f64;
                    x * Complex64::from_polar(1.0, sign * phase)
                })
                .sum::<Complex64>()
                * scale
        })
        .collect()
}

/// The continuous envelope `(1/√N) Σ_k X_k e^{j2π f_k t}` with
/// `f_k = k/(NT)` for `k < N/2` and `(k − N)/(NT)` above, evaluated at
/// `t = nT/L` and divided by `√L` to match a unitary `L·N`-point synthesis.
pub fn envelope_samples(symbols: &[Complex64], oversample: usize) -> Vec<Complex64> {
    let n = symbols.len();
    let period = 1.0; // T
    let samples = n * oversample;
    (0..samples)
        .map(|m| {
            let t = m as f64 * period / oversample as f64;
            let sum: Complex64 = symbols
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    let signed = if k < n.div_ceil(2) {
                        k as f64
                    } else {
                        k as f64 - n as f64
                    };
                    let f = signed / (n as f64 * period);
                    x * Complex64::from_polar(1.0, 2.0 * PI * f * t)
                })
                .sum();
            sum / (n as f64).sqrt() / (oversample as f64).sqrt()
        })
        .collect()
}

/// Oversampled synthesis via zero-padding and the naive transform.
pub fn naive_synthesize(symbols: &[Complex64], oversample: usize) -> Vec<Complex64> {
    let n = symbols.len();
    let half = n.div_ceil(2);
    let mut padded = vec![c(0.0, 0.0); n * oversample];
    padded[..half].copy_from_slice(&symbols[..half]);
    let tail = n - half;
    let len = padded.len();
    padded[len - tail..].copy_from_slice(&symbols[half..]);
    naive_inverse_dft(&padded)
}

pub fn papr_linear(samples: &[Complex64]) -> f64 {
    let powers: Vec<f64> = samples.iter().map(|s| s.norm_sqr()).collect();
    let peak = powers.iter().cloned().fold(0.0, f64::max);
    let mean = powers.iter().sum::<f64>() / powers.len() as f64;
    peak / mean
}

pub fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn random_complex<R: Rng>(rng: &mut R, len: usize) -> Vec<Complex64> {
    (0..len)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect()
}

/// Brute-force PTS: for every phase vector in lexicographic order, rebuild
/// the weighted spectrum `Σ_v b_v X_v` explicitly and transform it with the
/// naive DFT. Ties within `tie` (relative) keep the lower index, the same
/// rule the library documents.
pub fn brute_force_pts(
    symbols: &[Complex64],
    block_of: &[usize],
    v_count: usize,
    alphabet: &[Complex64],
    oversample: usize,
    tie: f64,
) -> (usize, f64) {
    let w = alphabet.len();
    let total = w.pow(v_count as u32);
    let mut best = (0usize, f64::INFINITY);
    for index in 0..total {
        let mut digits = vec![0; v_count];
        let mut rest = index;
        for d in digits.iter_mut().rev() {
            *d = rest % w;
            rest /= w;
        }
        let spectrum: Vec<Complex64> = symbols
            .iter()
            .zip(block_of)
            .map(|(&x, &b)| alphabet[digits[b]] * x)
            .collect();
        let p = papr_linear(&naive_synthesize(&spectrum, oversample));
        if p < best.1 * (1.0 - tie) {
            best = (index, p);
        }
    }
    best
}

/// Lowest-PAPR index over explicit candidate frames, strict comparison.
pub fn argmin_scan(paprs: &[f64]) -> (usize, f64) {
    let mut best = (0, paprs[0]);
    for (i, &p) in paprs.iter().enumerate().skip(1) {
        if p < best.1 {
            best = (i, p);
        }
    }
    best
}
