//! Seeded Monte-Carlo CCDF experiments.
//!
//! Trial `t` of an experiment with seed `s` draws its frame bits from
//! `trial_stream(s, t, FrameBits)` and, for SLM, its candidate sequences from
//! `trial_stream(s, t, SlmSequences)`. The PTS partition is drawn once per
//! experiment from `trial_stream(s, 0, Partition)`, since a transmitter and
//! receiver would share a fixed partition. Experiments that differ only in
//! the reduction method therefore see identical frames.
//!
//! Trials run in parallel and are merged in trial order, so the result does
//! not depend on scheduling.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modulation::{random_frame, ModulationScheme};
use crate::ofdm::synthesize;
use crate::pts::{make_partition, phase_alphabet, pts_reduce_with, PartitionScheme, PtsSearch, SubBlockPartition};
use crate::slm::{generate_phase_sequences, slm_reduce};
use crate::stats::{analytic_ccdf, empirical_ccdf, papr_at_ccdf, threshold_grid, CcdfCurve};
use crate::stream::{trial_stream, Purpose};

/// PAPR reduction applied to each frame.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    None,
    Slm,
    Pts,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Slm => "slm",
            Self::Pts => "pts",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Self::None),
            "slm" => Ok(Self::Slm),
            "pts" => Ok(Self::Pts),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

/// `lo:hi:step` threshold grid in dB.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdGrid {
    pub lo_db: f64,
    pub hi_db: f64,
    pub step_db: f64,
}

impl Default for ThresholdGrid {
    fn default() -> Self {
        Self {
            lo_db: 0.0,
            hi_db: 13.0,
            step_db: 0.05,
        }
    }
}

impl ThresholdGrid {
    pub fn values(&self) -> Result<Vec<f64>> {
        threshold_grid(self.lo_db, self.hi_db, self.step_db)
    }
}

impl FromStr for ThresholdGrid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidParameter(format!("threshold grid `{s}` is not lo:hi:step"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let num = |p: &str| p.trim().parse::<f64>().map_err(|_| bad());
        let grid = Self {
            lo_db: num(parts[0])?,
            hi_db: num(parts[1])?,
            step_db: num(parts[2])?,
        };
        grid.values()?;
        Ok(grid)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n_subcarriers: usize,
    pub modulation: ModulationScheme,
    pub oversample: usize,
    pub method: Method,
    pub slm_branches: usize,
    pub pts_blocks: usize,
    pub pts_phase_order: usize,
    pub partition_scheme: PartitionScheme,
    pub pts_search: PtsSearch,
    pub trials: usize,
    pub master_seed: u64,
    pub thresholds: ThresholdGrid,
    /// Also compute the closed-form curve (unmodified and SLM only).
    pub analytic: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            n_subcarriers: 64,
            modulation: ModulationScheme::Qpsk,
            oversample: 8,
            method: Method::None,
            slm_branches: 4,
            pts_blocks: 4,
            pts_phase_order: 4,
            partition_scheme: PartitionScheme::PseudoRandom,
            pts_search: PtsSearch::Exhaustive,
            trials: 1000,
            master_seed: 1,
            thresholds: ThresholdGrid::default(),
            analytic: false,
        }
    }
}

impl ExperimentConfig {
    /// Check every structural parameter, whichever method is selected.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_subcarriers;
        if !n.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n));
        }
        if !self.oversample.is_power_of_two() {
            return Err(Error::InvalidParameter(format!(
                "oversampling factor {} must be a power of two",
                self.oversample
            )));
        }
        if n.checked_mul(self.oversample).is_none_or(|p| p > 1 << 24) {
            return Err(Error::InvalidParameter("frame length too large".into()));
        }
        if self.slm_branches < 1 {
            return Err(Error::InvalidParameter("SLM needs at least one branch".into()));
        }
        if self.pts_blocks == 0 || n % self.pts_blocks != 0 {
            return Err(Error::Divisibility {
                subcarriers: n,
                blocks: self.pts_blocks,
            });
        }
        phase_alphabet(self.pts_phase_order)?;
        crate::pts::phase_vector(self.pts_phase_order, self.pts_blocks, 0)?;
        if self.trials < 1 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        self.thresholds.values()?;
        Ok(())
    }

    /// Short name for the configured method, e.g. `slm_m4` or `pts_v4_w4`.
    pub fn label(&self) -> String {
        match self.method {
            Method::None => "none".into(),
            Method::Slm => format!("slm_m{}", self.slm_branches),
            Method::Pts => format!("pts_v{}_w{}", self.pts_blocks, self.pts_phase_order),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub empirical: CcdfCurve,
    pub analytic: Option<CcdfCurve>,
    pub samples_db: Vec<f64>,
    /// SLM sequence index or PTS combination index per trial; 0 for `none`.
    pub side_info: Vec<u64>,
    pub elapsed_seconds: f64,
}

impl ExperimentResult {
    /// CCDF values below this are backed by fewer than ten exceedances.
    pub fn reliable_min_probability(&self) -> f64 {
        10.0 / self.samples_db.len() as f64
    }

    /// PAPR₀ (dB) at which the empirical CCDF falls to `p`.
    pub fn papr_at_ccdf(&self, p: f64) -> Result<f64> {
        papr_at_ccdf(&self.samples_db, p)
    }
}

struct Trial {
    papr_db: f64,
    side_info: u64,
}

fn run_trial(config: &ExperimentConfig, partition: Option<&SubBlockPartition>, t: u64) -> Result<Trial> {
    let seed = config.master_seed;
    let mut bits = trial_stream(seed, t, Purpose::FrameBits);
    let freq = random_frame(config.n_subcarriers, config.modulation, &mut bits)?;
    let (papr, side_info) = match config.method {
        Method::None => (synthesize(&freq, config.oversample)?.papr(), 0),
        Method::Slm => {
            let mut rng = trial_stream(seed, t, Purpose::SlmSequences);
            let seqs = generate_phase_sequences(config.slm_branches, config.n_subcarriers, &mut rng)?;
            let out = slm_reduce(&freq, &seqs, config.oversample)?;
            (out.papr, out.selected_index as u64)
        }
        Method::Pts => {
            let partition = partition.expect("partition built for PTS runs");
            let out = pts_reduce_with(
                &freq,
                partition,
                config.pts_phase_order,
                config.oversample,
                config.pts_search,
            )?;
            (out.papr, out.chosen.combination_index as u64)
        }
    };
    Ok(Trial {
        papr_db: papr.db,
        side_info,
    })
}

/// Run `config.trials` independent trials and build the CCDF.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentResult> {
    config.validate()?;
    let started = Instant::now();
    let thresholds = config.thresholds.values()?;

    let partition = match config.method {
        Method::Pts => {
            let mut rng = trial_stream(config.master_seed, 0, Purpose::Partition);
            Some(make_partition(
                config.n_subcarriers,
                config.pts_blocks,
                config.partition_scheme,
                &mut rng,
            )?)
        }
        _ => None,
    };

    let trials = (0..config.trials as u64)
        .into_par_iter()
        .map(|t| run_trial(config, partition.as_ref(), t))
        .collect::<Result<Vec<_>>>()?;
    let (samples_db, side_info): (Vec<f64>, Vec<u64>) = trials.into_iter().map(|t| (t.papr_db, t.side_info)).unzip();

    let empirical = empirical_ccdf(&samples_db, &thresholds)?;
    let analytic = match (config.analytic, config.method) {
        (true, Method::None) => Some(analytic_ccdf(config.n_subcarriers, 1, &thresholds)?),
        (true, Method::Slm) => Some(analytic_ccdf(config.n_subcarriers, config.slm_branches, &thresholds)?),
        _ => None,
    };

    Ok(ExperimentResult {
        config: config.clone(),
        empirical,
        analytic,
        samples_db,
        side_info,
        elapsed_seconds: started.elapsed().as_secs_f64(),
    })
}

/// A method plus its parameters, as written on the command line:
/// `none`, `slm[:M]`, `pts[:V[:W]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MethodSpec {
    pub method: Method,
    pub slm_branches: Option<usize>,
    pub pts_blocks: Option<usize>,
    pub pts_phase_order: Option<usize>,
}

impl MethodSpec {
    pub fn apply(&self, base: &ExperimentConfig) -> ExperimentConfig {
        ExperimentConfig {
            method: self.method,
            slm_branches: self.slm_branches.unwrap_or(base.slm_branches),
            pts_blocks: self.pts_blocks.unwrap_or(base.pts_blocks),
            pts_phase_order: self.pts_phase_order.unwrap_or(base.pts_phase_order),
            ..base.clone()
        }
    }
}

impl FromStr for MethodSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split(':');
        let method: Method = parts.next().unwrap_or_default().parse()?;
        let params = parts
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad parameter `{p}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let max = match method {
            Method::None => 0,
            Method::Slm => 1,
            Method::Pts => 2,
        };
        if params.len() > max {
            return Err(Error::InvalidParameter(format!("too many parameters in `{s}`")));
        }
        let (first, second) = (params.first().copied(), params.get(1).copied());
        Ok(match method {
            Method::None => Self {
                method,
                slm_branches: None,
                pts_blocks: None,
                pts_phase_order: None,
            },
            Method::Slm => Self {
                method,
                slm_branches: first,
                pts_blocks: None,
                pts_phase_order: None,
            },
            Method::Pts => Self {
                method,
                slm_branches: None,
                pts_blocks: first,
                pts_phase_order: second,
            },
        })
    }
}

/// Run several methods over the same seed, hence the same frames.
pub fn run_comparison(base: &ExperimentConfig, methods: &[MethodSpec]) -> Result<Vec<ExperimentResult>> {
    if methods.is_empty() {
        return Err(Error::InvalidParameter("nothing to compare".into()));
    }
    let configs: Vec<ExperimentConfig> = methods.iter().map(|m| m.apply(base)).collect();
    for c in &configs {
        c.validate()?;
    }
    configs.iter().map(run_experiment).collect()
}
