//! Result CSV files and per-series summaries.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use super::MetricRow;
use crate::chain::Strategy;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 10] = [
    "dataset",
    "strategy",
    "s",
    "missing_pct",
    "repeat",
    "fold",
    "n_test",
    "set_accuracy",
    "completeness",
    "wall_ms",
];

pub const SERIES_HEADER: [&str; 9] = [
    "dataset",
    "strategy",
    "s",
    "missing_pct",
    "n_cells",
    "mean_sa",
    "mean_cp",
    "stderr_sa",
    "stderr_cp",
];

fn writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out)
}

fn f6(v: f64) -> String {
    format!("{v:.6}")
}

/// Writes the header and one line per row; floats get six decimals.
pub fn write_rows<W: Write>(rows: &[MetricRow], out: W) -> Result<()> {
    let mut w = writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record([
            r.dataset.clone(),
            r.strategy.to_string(),
            f6(r.s),
            f6(r.missing_pct),
            r.repeat.to_string(),
            r.fold.to_string(),
            r.n_test.to_string(),
            f6(r.set_accuracy),
            f6(r.completeness),
            f6(r.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Parses a file written by [`write_rows`].
pub fn read_rows<R: Read>(input: R) -> Result<Vec<MetricRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Config(format!(
            "unexpected result header {header:?}"
        )));
    }
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |field: &str| Error::Config(format!("line {line}: bad {field} value"));
        let float = |i: usize| record[i].parse::<f64>().map_err(|_| bad(CSV_HEADER[i]));
        let int = |i: usize| record[i].parse::<usize>().map_err(|_| bad(CSV_HEADER[i]));
        rows.push(MetricRow {
            dataset: record[0].to_string(),
            strategy: record[1].parse::<Strategy>()?,
            s: float(2)?,
            missing_pct: float(3)?,
            repeat: int(4)?,
            fold: int(5)?,
            n_test: int(6)?,
            set_accuracy: float(7)?,
            completeness: float(8)?,
            wall_ms: float(9)?,
        });
    }
    Ok(rows)
}

/// One point of an (dataset, strategy, s) series.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesPoint {
    pub dataset: String,
    pub strategy: Strategy,
    pub s: f64,
    pub missing_pct: f64,
    pub n_cells: usize,
    pub mean_sa: f64,
    pub mean_cp: f64,
    pub stderr_sa: f64,
    pub stderr_cp: f64,
}

fn mean_stderr(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Averages fold rows over repeats and folds. Points are ordered by dataset,
/// strategy, `s` and missing percentage.
pub fn summarize(rows: &[MetricRow]) -> Vec<SeriesPoint> {
    // s and percentages are nonnegative, so their bit patterns sort numerically
    type Key<'a> = (&'a str, Strategy, u64, u64);
    let mut groups: BTreeMap<Key, (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for r in rows {
        let entry = groups
            .entry((
                r.dataset.as_str(),
                r.strategy,
                r.s.to_bits(),
                r.missing_pct.to_bits(),
            ))
            .or_default();
        entry.0.push(r.set_accuracy);
        entry.1.push(r.completeness);
    }
    groups
        .into_iter()
        .map(|((dataset, strategy, s, pct), (sa, cp))| {
            let (mean_sa, stderr_sa) = mean_stderr(&sa);
            let (mean_cp, stderr_cp) = mean_stderr(&cp);
            SeriesPoint {
                dataset: dataset.to_string(),
                strategy,
                s: f64::from_bits(s),
                missing_pct: f64::from_bits(pct),
                n_cells: sa.len(),
                mean_sa,
                mean_cp,
                stderr_sa,
                stderr_cp,
            }
        })
        .collect()
}

pub fn write_series<W: Write>(points: &[SeriesPoint], out: W) -> Result<()> {
    let mut w = writer(out);
    w.write_record(SERIES_HEADER)?;
    for p in points {
        w.write_record([
            p.dataset.clone(),
            p.strategy.to_string(),
            f6(p.s),
            f6(p.missing_pct),
            p.n_cells.to_string(),
            f6(p.mean_sa),
            f6(p.mean_cp),
            f6(p.stderr_sa),
            f6(p.stderr_cp),
        ])?;
    }
    w.flush()?;
    Ok(())
}
