//! Partial transmit sequences.
//!
//! The `N` subcarriers are split into `V` disjoint, equal-size sub-blocks.
//! Each sub-block spectrum `X_v` (zeros outside the block) is synthesized
//! once, and by linearity of the inverse transform every weighted candidate
//!
//! ```text
//! x(b) = Σ_v b_v · IDFT(X_v) = IDFT(Σ_v b_v · X_v)
//! ```
//!
//! is a weighted sum of those `V` time signals. The search scores every
//! `b ∈ A^V` for a `W`-ary alphabet `A` and keeps the one with the smallest
//! PAPR.
//!
//! Candidates are indexed lexicographically with the first factor most
//! significant, so index 0 is the all-`+1` vector. Scoring splits the factors
//! into a leading and trailing half and precomputes the partial sums of each,
//! so a candidate costs one vector add instead of `V`.
//!
//! Two candidates whose PAPR agrees to within [`TIE_TOLERANCE`] (relative)
//! are treated as tied and the lower index wins. This keeps the choice stable
//! across summation orders and across global-phase twins `b` and `c·b`,
//! which are mathematically identical.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulation::FrequencyFrame;
use crate::ofdm::{papr_of, plan_for, synthesize_raw, synthesize_with, PaprSample, TimeFrame};

/// Relative PAPR difference below which two candidates count as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Largest search the library will enumerate.
pub const MAX_COMBINATIONS: usize = 1 << 20;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

const ALPHABET_2: [Complex64; 2] = [ONE, Complex64::new(-1.0, 0.0)];
const ALPHABET_4: [Complex64; 4] = [
    ONE,
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(0.0, -1.0),
];

/// Weighting alphabet for phase order `w`: `{+1, -1}` or `{+1, -1, +j, -j}`.
pub fn phase_alphabet(w: usize) -> Result<&'static [Complex64]> {
    match w {
        2 => Ok(&ALPHABET_2),
        4 => Ok(&ALPHABET_4),
        other => Err(Error::UnsupportedPhaseOrder(other)),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionScheme {
    /// Block `v` owns the contiguous run `[v·N/V, (v+1)·N/V)`.
    Adjacent,
    /// Subcarrier `k` belongs to block `k mod V`.
    Interleaved,
    /// A seeded shuffle of `0..N` cut into `V` consecutive chunks.
    #[default]
    PseudoRandom,
}

impl fmt::Display for PartitionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Adjacent => "adjacent",
            Self::Interleaved => "interleaved",
            Self::PseudoRandom => "pseudorandom",
        })
    }
}

impl FromStr for PartitionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "adjacent" => Ok(Self::Adjacent),
            "interleaved" => Ok(Self::Interleaved),
            "pseudorandom" => Ok(Self::PseudoRandom),
            other => Err(Error::InvalidParameter(format!("unknown partition scheme `{other}`"))),
        }
    }
}

/// Assignment of each subcarrier to one of `V` equal-size sub-blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubBlockPartition {
    block_of: Vec<usize>,
    v_count: usize,
    scheme: PartitionScheme,
}

impl SubBlockPartition {
    /// Validate an explicit assignment: every entry below `v_count` and every
    /// block the same size.
    pub fn from_assignment(block_of: Vec<usize>, v_count: usize, scheme: PartitionScheme) -> Result<Self> {
        let n = block_of.len();
        check_divides(n, v_count)?;
        let mut sizes = vec![0usize; v_count];
        for &b in &block_of {
            if b >= v_count {
                return Err(Error::InvalidParameter(format!(
                    "block index {b} out of range for {v_count} blocks"
                )));
            }
            sizes[b] += 1;
        }
        if sizes.iter().any(|&s| s != n / v_count) {
            return Err(Error::InvalidParameter("sub-blocks must have equal sizes".into()));
        }
        Ok(Self {
            block_of,
            v_count,
            scheme,
        })
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn n_subcarriers(&self) -> usize {
        self.block_of.len()
    }

    pub fn scheme(&self) -> PartitionScheme {
        self.scheme
    }

    /// Subcarrier indices of each block, ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::with_capacity(self.block_of.len() / self.v_count); self.v_count];
        for (k, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(k);
        }
        blocks
    }

    /// `X_v`: the frame restricted to block `v`, zero elsewhere.
    pub fn block_spectrum(&self, symbols: &[Complex64], v: usize) -> Vec<Complex64> {
        symbols
            .iter()
            .zip(&self.block_of)
            .map(|(&x, &b)| if b == v { x } else { Complex64::new(0.0, 0.0) })
            .collect()
    }
}

fn check_divides(n: usize, v_count: usize) -> Result<()> {
    if v_count == 0 || n == 0 || n % v_count != 0 {
        return Err(Error::Divisibility {
            subcarriers: n,
            blocks: v_count,
        });
    }
    Ok(())
}

/// Build a partition of `n` subcarriers into `v_count` blocks. Only
/// [`PartitionScheme::PseudoRandom`] draws from `rng`.
pub fn make_partition<R: Rng + ?Sized>(
    n: usize,
    v_count: usize,
    scheme: PartitionScheme,
    rng: &mut R,
) -> Result<SubBlockPartition> {
    check_divides(n, v_count)?;
    let size = n / v_count;
    let block_of = match scheme {
        PartitionScheme::Adjacent => (0..n).map(|k| k / size).collect(),
        PartitionScheme::Interleaved => (0..n).map(|k| k % v_count).collect(),
        PartitionScheme::PseudoRandom => {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(rng);
            let mut block_of = vec![0; n];
            for (pos, &k) in order.iter().enumerate() {
                block_of[k] = pos / size;
            }
            block_of
        }
    };
    Ok(SubBlockPartition {
        block_of,
        v_count,
        scheme,
    })
}

/// One candidate weighting `b = [b_1 … b_V]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseVector {
    pub factors: Vec<Complex64>,
    pub combination_index: usize,
}

/// Per-position alphabet indices of `combination_index`, most significant
/// first.
fn digits(mut index: usize, w: usize, v_count: usize) -> Vec<usize> {
    let mut out = vec![0; v_count];
    for slot in out.iter_mut().rev() {
        *slot = index % w;
        index /= w;
    }
    out
}

fn combination_count(w: usize, v_count: usize) -> Result<usize> {
    u32::try_from(v_count)
        .ok()
        .and_then(|v| w.checked_pow(v))
        .filter(|&c| c <= MAX_COMBINATIONS)
        .ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{w}^{v_count} phase combinations exceed the limit of {MAX_COMBINATIONS}"
            ))
        })
}

/// The phase vector at `combination_index` in the lexicographic order.
pub fn phase_vector(w: usize, v_count: usize, combination_index: usize) -> Result<PhaseVector> {
    let alphabet = phase_alphabet(w)?;
    let count = combination_count(w, v_count)?;
    if combination_index >= count {
        return Err(Error::InvalidParameter(format!(
            "combination index {combination_index} out of range for {count} candidates"
        )));
    }
    Ok(PhaseVector {
        factors: digits(combination_index, w, v_count)
            .into_iter()
            .map(|d| alphabet[d])
            .collect(),
        combination_index,
    })
}

/// All `W^V` phase vectors in lexicographic order.
pub fn enumerate_phase_vectors(w: usize, v_count: usize) -> Result<Vec<PhaseVector>> {
    phase_alphabet(w)?;
    let count = combination_count(w, v_count)?;
    (0..count).map(|i| phase_vector(w, v_count, i)).collect()
}

/// Which part of the `W^V` space to search.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PtsSearch {
    /// Every combination, including global-phase duplicates.
    #[default]
    Exhaustive,
    /// Pin `b_1 = +1`, leaving `W^(V-1)` combinations.
    FixFirstFactor,
}

#[derive(Clone, Debug)]
pub struct PtsResult {
    pub frame: TimeFrame,
    pub chosen: PhaseVector,
    pub papr: PaprSample,
    pub combinations_searched: usize,
}

/// Exhaustive PTS over all `W^V` weightings.
pub fn pts_reduce(
    freq: &FrequencyFrame,
    partition: &SubBlockPartition,
    w: usize,
    oversample: usize,
) -> Result<PtsResult> {
    pts_reduce_with(freq, partition, w, oversample, PtsSearch::Exhaustive)
}

pub fn pts_reduce_with(
    freq: &FrequencyFrame,
    partition: &SubBlockPartition,
    w: usize,
    oversample: usize,
    search: PtsSearch,
) -> Result<PtsResult> {
    let n = freq.n_subcarriers();
    if partition.n_subcarriers() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            actual: partition.n_subcarriers(),
        });
    }
    let alphabet = phase_alphabet(w)?;
    let v_count = partition.v_count();
    let total = combination_count(w, v_count)?;
    let searched = match search {
        PtsSearch::Exhaustive => total,
        PtsSearch::FixFirstFactor => total / w,
    };
    let plan = plan_for(n, oversample)?;
    let len = plan.len();

    // The all-ones candidate is the plain frame; synthesize it directly so
    // the result can be compared bit-for-bit against the unmodified frame.
    let reference = synthesize_with(&plan, freq.symbols(), oversample)?;

    let block_signals = (0..v_count)
        .map(|v| synthesize_raw(&plan, &partition.block_spectrum(freq.symbols(), v), oversample))
        .collect::<Result<Vec<_>>>()?;

    let lead = v_count / 2;
    let lead_signals = partial_sums(&block_signals[..lead], alphabet, len);
    let tail_signals = partial_sums(&block_signals[lead..], alphabet, len);
    let tail_count = tail_signals.len();

    let mut best_index = 0;
    let mut best_papr = reference.papr();
    let mut scratch = vec![Complex64::new(0.0, 0.0); len];
    for index in 1..searched {
        let lead_part = &lead_signals[index / tail_count];
        let tail_part = &tail_signals[index % tail_count];
        combine(lead_part, tail_part, &mut scratch);
        let p = papr_of(&scratch)?;
        if p.linear < best_papr.linear * (1.0 - TIE_TOLERANCE) {
            best_index = index;
            best_papr = p;
        }
    }

    let frame = if best_index == 0 {
        reference
    } else {
        combine(
            &lead_signals[best_index / tail_count],
            &tail_signals[best_index % tail_count],
            &mut scratch,
        );
        TimeFrame::new(scratch, oversample, n)?
    };
    Ok(PtsResult {
        papr: frame.papr(),
        frame,
        chosen: phase_vector(w, v_count, best_index)?,
        combinations_searched: searched,
    })
}

fn combine(a: &[Complex64], b: &[Complex64], out: &mut [Complex64]) {
    for ((o, x), y) in out.iter_mut().zip(a).zip(b) {
        *o = x + y;
    }
}

/// `Σ_v b_v x_v` for every weighting of `signals`, in lexicographic order.
/// An empty slice yields a single all-zero signal.
fn partial_sums(signals: &[Vec<Complex64>], alphabet: &[Complex64], len: usize) -> Vec<Vec<Complex64>> {
    let mut sums = vec![vec![Complex64::new(0.0, 0.0); len]];
    for signal in signals {
        sums = sums
            .iter()
            .flat_map(|prefix| {
                alphabet
                    .iter()
                    .map(move |&b| prefix.iter().zip(signal).map(|(p, x)| p + b * x).collect::<Vec<_>>())
            })
            .collect();
    }
    sums
}
