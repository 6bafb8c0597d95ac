//! Set-valued metrics, the cross-validation loop and result files.

mod experiment;
mod report;

pub use experiment::{default_s_values, run_experiment, ExperimentGrid, DEFAULT_MISSING_PCTS};
pub use report::{
    read_rows, summarize, write_rows, write_series, SeriesPoint, CSV_HEADER, SERIES_HEADER,
};

use crate::chain::Strategy;
use crate::credal::PartialLabelVector;
use crate::error::{Error, Result};

/// `1` when `truth` is one of the completions of `pred`, else `0`. A fully
/// abstained prediction always scores `1`.
pub fn set_accuracy(pred: &PartialLabelVector, truth: &[bool]) -> Result<f64> {
    if pred.len() != truth.len() {
        return Err(Error::LengthMismatch {
            expected: pred.len(),
            found: truth.len(),
        });
    }
    let hit = pred
        .states()
        .iter()
        .zip(truth)
        .all(|(state, &t)| state.value().is_none_or(|v| v == t));
    Ok(if hit { 1.0 } else { 0.0 })
}

/// Fraction of labels that were decided.
pub fn completeness(pred: &PartialLabelVector) -> f64 {
    if pred.is_empty() {
        return 0.0;
    }
    (pred.len() - pred.abstain_count()) as f64 / pred.len() as f64
}

/// Fold-level averages for one grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricRow {
    pub dataset: String,
    pub strategy: Strategy,
    pub s: f64,
    pub missing_pct: f64,
    pub repeat: usize,
    pub fold: usize,
    pub n_test: usize,
    pub set_accuracy: f64,
    pub completeness: f64,
    pub wall_ms: f64,
}
