//! CSV and JSON serialization of experiment results.
//!
//! CSV: a `papr_db,ccdf` header (plus `analytic_ccdf` when a closed-form
//! curve was computed), then one row per threshold in ascending order with
//! every value printed to six decimals. A comparison writes one `ccdf`
//! column per method, named by [`ExperimentConfig::label`].
//!
//! JSON: one object per experiment; a comparison wraps them in
//! `{"experiments": [...]}`. Only `elapsed_seconds` varies between runs of
//! the same configuration.
//!
//! [`ExperimentConfig::label`]: crate::experiment::ExperimentConfig::label

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{ExperimentConfig, ExperimentResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::InvalidParameter(format!("unknown format `{other}`"))),
        }
    }
}

/// JSON layout of one experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonRecord {
    pub label: String,
    pub config: ExperimentConfig,
    pub thresholds_db: Vec<f64>,
    pub ccdf: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analytic_ccdf: Option<Vec<f64>>,
    pub samples_db: Vec<f64>,
    pub side_info: Vec<u64>,
    pub seed: u64,
    pub trials: usize,
    /// CCDF values below this rest on fewer than ten exceedances.
    pub reliable_min_probability: f64,
    pub elapsed_seconds: f64,
}

impl From<&ExperimentResult> for JsonRecord {
    fn from(r: &ExperimentResult) -> Self {
        Self {
            label: r.config.label(),
            config: r.config.clone(),
            thresholds_db: r.empirical.thresholds_db.clone(),
            ccdf: r.empirical.probabilities.clone(),
            analytic_ccdf: r.analytic.as_ref().map(|a| a.probabilities.clone()),
            samples_db: r.samples_db.clone(),
            side_info: r.side_info.clone(),
            seed: r.config.master_seed,
            trials: r.config.trials,
            reliable_min_probability: r.reliable_min_probability(),
            elapsed_seconds: r.elapsed_seconds,
        }
    }
}

#[derive(Serialize)]
struct Comparison {
    experiments: Vec<JsonRecord>,
}

fn fixed6(x: f64) -> String {
    // Avoid printing "-0.000000".
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

/// Write one result to `sink`.
pub fn write_result<W: Write + ?Sized>(
    result: &ExperimentResult,
    format: OutputFormat,
    sink: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(std::slice::from_ref(result), false, sink),
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, &JsonRecord::from(result))?;
            writeln!(sink)
        }
    }
}

/// Write several results computed on a shared threshold grid.
pub fn write_comparison<W: Write + ?Sized>(
    results: &[ExperimentResult],
    format: OutputFormat,
    sink: &mut W,
) -> std::io::Result<()> {
    match format {
        OutputFormat::Csv => write_csv(results, true, sink),
        OutputFormat::Json => {
            let doc = Comparison {
                experiments: results.iter().map(JsonRecord::from).collect(),
            };
            serde_json::to_writer_pretty(&mut *sink, &doc)?;
            writeln!(sink)
        }
    }
}

fn write_csv<W: Write + ?Sized>(results: &[ExperimentResult], labelled: bool, sink: &mut W) -> std::io::Result<()> {
    let Some(first) = results.first() else {
        return Ok(());
    };
    let mut header = vec!["papr_db".to_string()];
    for r in results {
        header.push(if labelled { r.config.label() } else { "ccdf".into() });
    }
    for r in results.iter().filter(|r| r.analytic.is_some()) {
        header.push(if labelled {
            format!("{}_analytic", r.config.label())
        } else {
            "analytic_ccdf".into()
        });
    }
    writeln!(sink, "{}", header.join(","))?;

    for (i, &z) in first.empirical.thresholds_db.iter().enumerate() {
        let mut row = vec![fixed6(z)];
        row.extend(results.iter().map(|r| fixed6(r.empirical.probabilities[i])));
        row.extend(
            results
                .iter()
                .filter_map(|r| r.analytic.as_ref())
                .map(|a| fixed6(a.probabilities[i])),
        );
        writeln!(sink, "{}", row.join(","))?;
    }
    Ok(())
}

/// Serialize fully in memory, then write the file in one go.
pub fn write_to_path(results: &[ExperimentResult], format: OutputFormat, path: &Path) -> Result<()> {
    let mut buf = Vec::new();
    render(results, format, &mut buf).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    fs::write(path, buf).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// One result goes through [`write_result`], several through
/// [`write_comparison`].
pub fn render<W: Write + ?Sized>(
    results: &[ExperimentResult],
    format: OutputFormat,
    sink: &mut W,
) -> std::io::Result<()> {
    match results {
        [single] => write_result(single, format, sink),
        many => write_comparison(many, format, sink),
    }
}
