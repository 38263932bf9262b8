//! Command-line front end for [`run_experiment`](crate::experiment::run_experiment).
//!
//! Exit status: 0 on success, 1 when arguments or the configuration are
//! invalid (nothing is written), 2 when output cannot be written.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::Parser;

use crate::error::Error;
use crate::experiment::{run_comparison, run_experiment, ExperimentConfig, Method, MethodSpec, ThresholdGrid};
use crate::modulation::ModulationScheme;
use crate::pts::{PartitionScheme, PtsSearch};
use crate::report::{render, write_to_path, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_IO: i32 = 2;

/// Monte-Carlo PAPR CCDF experiments for OFDM with SLM and PTS reduction.
#[derive(Debug, Parser)]
#[command(name = "papr-sim", version)]
struct Args {
    /// Number of subcarriers N (power of two).
    #[arg(long = "n", default_value_t = 64)]
    n: usize,

    /// Constellation: bpsk or qpsk.
    #[arg(long = "mod", default_value_t = ModulationScheme::Qpsk)]
    modulation: ModulationScheme,

    /// Oversampling factor L (power of two).
    #[arg(long, default_value_t = 8)]
    oversample: usize,

    /// Reduction method: none, slm or pts.
    #[arg(long, default_value_t = Method::None)]
    method: Method,

    /// SLM candidate count M, identity included.
    #[arg(long = "slm-m", default_value_t = 4)]
    slm_m: usize,

    /// PTS sub-block count V; must divide N.
    #[arg(long = "pts-v", default_value_t = 4)]
    pts_v: usize,

    /// PTS phase order W: 2 for {±1}, 4 for {±1, ±j}.
    #[arg(long = "pts-w", default_value_t = 4)]
    pts_w: usize,

    /// Fix the first PTS factor to +1, searching W^(V-1) combinations.
    #[arg(long = "pts-fix-first")]
    pts_fix_first: bool,

    /// Sub-block partition: adjacent, interleaved or pseudorandom.
    #[arg(long, default_value_t = PartitionScheme::PseudoRandom)]
    partition: PartitionScheme,

    /// Number of random frames.
    #[arg(long, default_value_t = 1000)]
    trials: usize,

    /// Master seed for all random streams.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// CCDF threshold grid in dB as lo:hi:step.
    #[arg(long, default_value = "0:13:0.05")]
    thresholds: ThresholdGrid,

    /// Output format: csv or json.
    #[arg(long, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Add the closed-form CCDF (none and slm only).
    #[arg(long)]
    analytic: bool,

    /// Run this method on the same frames as the others; repeatable.
    /// Accepts none, slm[:M] or pts[:V[:W]]. Overrides --method.
    #[arg(long, value_name = "METHOD")]
    compare: Vec<MethodSpec>,
}

impl Args {
    fn config(&self) -> ExperimentConfig {
        ExperimentConfig {
            n_subcarriers: self.n,
            modulation: self.modulation,
            oversample: self.oversample,
            method: self.method,
            slm_branches: self.slm_m,
            pts_blocks: self.pts_v,
            pts_phase_order: self.pts_w,
            partition_scheme: self.partition,
            pts_search: if self.pts_fix_first {
                PtsSearch::FixFirstFactor
            } else {
                PtsSearch::Exhaustive
            },
            trials: self.trials,
            master_seed: self.seed,
            thresholds: self.thresholds,
            analytic: self.analytic,
        }
    }
}

/// Parse `args` (program name first), run, and write the output to `--out`
/// or `stdout`. Diagnostics go to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let status = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().ansi().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{rendered}")
            } else {
                write!(stdout, "{rendered}")
            };
            return status;
        }
    };

    let base = args.config();
    let outcome = if args.compare.is_empty() {
        run_experiment(&base).map(|r| vec![r])
    } else {
        run_comparison(&base, &args.compare)
    };
    let results = match outcome {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}\n\nFor more information, try '--help'.");
            return EXIT_INVALID;
        }
    };

    let written = match &args.out {
        Some(path) => write_to_path(&results, args.format, path),
        None => render(&results, args.format, stdout).map_err(|source| Error::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    };
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_IO
        }
    }
}

/// Entry point used by the `papr-sim` binary.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}
