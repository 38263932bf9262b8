//! Selected mapping.
//!
//! The frame is multiplied element-wise by each of `M` phase sequences,
//! every candidate is synthesized, and the one with the lowest PAPR is kept.
//! Sequence 0 is always the identity, so the output is never worse than the
//! unmodified frame. Ties go to the lowest index, which makes the side
//! information (`selected_index`) deterministic.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::modulation::FrequencyFrame;
use crate::ofdm::{plan_for, synthesize_with, PaprSample, TimeFrame};

/// Rotation alphabet for the random sequences: `{+1, -1, +j, -j}`.
pub const ROTATIONS: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

/// Per-subcarrier rotations for one SLM candidate.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSequence {
    pub rotations: Vec<Complex64>,
    pub index: usize,
}

impl PhaseSequence {
    pub fn identity(n: usize) -> Self {
        Self {
            rotations: vec![Complex64::new(1.0, 0.0); n],
            index: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SlmResult {
    pub frame: TimeFrame,
    /// Index of the winning sequence; a receiver would need `log2 M` bits.
    pub selected_index: usize,
    pub papr: PaprSample,
    pub all_paprs: Vec<PaprSample>,
}

/// Generate `m_count` sequences of length `n`: the identity followed by
/// `m_count - 1` sequences with i.i.d. uniform rotations from [`ROTATIONS`].
///
/// Sequences are drawn in index order, so the first `m` of a larger set are
/// exactly what a call with `m_count = m` on the same stream returns.
pub fn generate_phase_sequences<R: Rng + ?Sized>(m_count: usize, n: usize, rng: &mut R) -> Result<Vec<PhaseSequence>> {
    if m_count < 1 {
        return Err(Error::InvalidParameter("SLM needs at least one candidate".into()));
    }
    if n < 1 {
        return Err(Error::InvalidParameter(
            "phase sequences need at least one subcarrier".into(),
        ));
    }
    let mut sequences = Vec::with_capacity(m_count);
    sequences.push(PhaseSequence::identity(n));
    for index in 1..m_count {
        let rotations = (0..n).map(|_| ROTATIONS[rng.random_range(0..4)]).collect();
        sequences.push(PhaseSequence { rotations, index });
    }
    Ok(sequences)
}

/// Apply SLM to `freq` with the given candidate sequences.
pub fn slm_reduce(freq: &FrequencyFrame, sequences: &[PhaseSequence], oversample: usize) -> Result<SlmResult> {
    let n = freq.n_subcarriers();
    if sequences.is_empty() {
        return Err(Error::InvalidParameter("SLM needs at least one candidate".into()));
    }
    if let Some(bad) = sequences.iter().find(|s| s.rotations.len() != n) {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: bad.rotations.len(),
        });
    }
    let plan = plan_for(n, oversample)?;

    let mut best: Option<(usize, TimeFrame, PaprSample)> = None;
    let mut all_paprs = Vec::with_capacity(sequences.len());
    for (m, seq) in sequences.iter().enumerate() {
        let rotated: Vec<Complex64> = freq.symbols().iter().zip(&seq.rotations).map(|(x, r)| x * r).collect();
        let candidate = synthesize_with(&plan, &rotated, oversample)?;
        let p = candidate.papr();
        all_paprs.push(p);
        if best.as_ref().is_none_or(|(_, _, b)| p.linear < b.linear) {
            best = Some((m, candidate, p));
        }
    }

    let (selected_index, frame, papr) = best.expect("at least one candidate");
    Ok(SlmResult {
        frame,
        selected_index,
        papr,
        all_paprs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modulation::{random_frame, ModulationScheme};
    use crate::ofdm::synthesize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_candidate_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let seqs = generate_phase_sequences(1, 16, &mut rng).unwrap();
        assert_eq!(seqs.len(), 1);
        assert_eq!(seqs[0], PhaseSequence::identity(16));

        let freq = random_frame(16, ModulationScheme::Qpsk, &mut rng).unwrap();
        let out = slm_reduce(&freq, &seqs, 4).unwrap();
        assert_eq!(out.selected_index, 0);
        assert_eq!(out.frame, synthesize(&freq, 4).unwrap());
    }

    #[test]
    fn sequences_use_the_rotation_alphabet() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let seqs = generate_phase_sequences(4, 64, &mut rng).unwrap();
        assert_eq!(seqs.len(), 4);
        for (m, s) in seqs.iter().enumerate() {
            assert_eq!(s.index, m);
            assert!(s.rotations.iter().all(|r| ROTATIONS.contains(r)));
            assert!(s.rotations.iter().all(|r| (r.norm() - 1.0).abs() < 1e-12));
        }
    }

    #[test]
    fn sequences_are_seed_deterministic_and_nested() {
        let gen = |m| generate_phase_sequences(m, 32, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(gen(8), gen(8));
        assert_eq!(gen(8)[..3], gen(3)[..]);
    }

    #[test]
    fn rejects_bad_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(generate_phase_sequences(0, 8, &mut rng).is_err());
        let freq = random_frame(8, ModulationScheme::Qpsk, &mut rng).unwrap();
        assert!(slm_reduce(&freq, &[], 1).is_err());
        let short = PhaseSequence::identity(4);
        assert!(matches!(
            slm_reduce(&freq, &[short], 1),
            Err(Error::LengthMismatch { expected: 8, actual: 4 })
        ));
    }

    #[test]
    fn ties_go_to_lowest_index() {
        // Sequence 1 is -1 everywhere: a global phase flip with identical PAPR.
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let freq = random_frame(16, ModulationScheme::Qpsk, &mut rng).unwrap();
        let flip = PhaseSequence {
            rotations: vec![Complex64::new(-1.0, 0.0); 16],
            index: 1,
        };
        let out = slm_reduce(&freq, &[PhaseSequence::identity(16), flip], 2).unwrap();
        assert_eq!(out.all_paprs[0], out.all_paprs[1]);
        assert_eq!(out.selected_index, 0);
    }
}
