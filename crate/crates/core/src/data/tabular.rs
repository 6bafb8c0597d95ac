//! Numeric CSV datasets whose trailing columns are binary labels.

use std::path::Path;

use super::{FeatureKind, RawDataset};
use crate::error::{Error, Result};

struct Table {
    header: Option<Vec<String>>,
    rows: Vec<(usize, Vec<String>)>,
}

fn read_table(path: &Path) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_path(path)?;
    let mut header = None;
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        let line = record.position().map_or(i + 1, |p| p.line() as usize);
        let fields: Vec<String> = record.iter().map(str::to_string).collect();
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        // a first row with any non-numeric cell is a header
        if i == 0 && fields.iter().any(|f| f.parse::<f64>().is_err()) {
            header = Some(fields);
            continue;
        }
        rows.push((line, fields));
    }
    Ok(Table { header, rows })
}

/// Loads a numeric CSV; the last `m_labels` columns must hold 0/1 labels.
/// A first row containing non-numeric cells is taken as a header.
pub fn load_csv(path: impl AsRef<Path>, m_labels: usize) -> Result<RawDataset> {
    let path = path.as_ref();
    let table = read_table(path)?;
    if table.rows.is_empty() {
        return Err(Error::parse(path, 0, "no rows"));
    }
    let width = table
        .header
        .as_ref()
        .map_or(table.rows[0].1.len(), Vec::len);
    if m_labels == 0 || m_labels >= width {
        return Err(Error::Config(format!(
            "label count {m_labels} must be between 1 and {} for {width} columns",
            width.saturating_sub(1)
        )));
    }
    let p = width - m_labels;

    let mut features = Vec::with_capacity(table.rows.len());
    let mut labels = Vec::with_capacity(table.rows.len());
    for (line, fields) in &table.rows {
        if fields.len() != width {
            return Err(Error::parse(
                path,
                *line,
                format!("expected {width} columns, found {}", fields.len()),
            ));
        }
        let row = parse_numeric(path, *line, &fields[..p])?;
        let labs = fields[p..]
            .iter()
            .map(|f| match f.parse::<f64>() {
                Ok(0.0) => Ok(false),
                Ok(1.0) => Ok(true),
                _ => Err(Error::parse(
                    path,
                    *line,
                    format!("non-binary label value {f:?}"),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        features.push(row);
        labels.push(labs);
    }

    let (feature_names, label_names) = match table.header {
        Some(h) => (h[..p].to_vec(), h[p..].to_vec()),
        None => (
            (0..p).map(|i| format!("x{i}")).collect(),
            (0..m_labels).map(|j| format!("y{j}")).collect(),
        ),
    };
    Ok(RawDataset {
        name: path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        feature_names,
        feature_kinds: vec![FeatureKind::Numeric; p],
        label_names,
        features,
        labels,
    })
}

/// Reads feature rows for prediction. Rows may carry `p` features only or
/// `p + m` columns, in which case the trailing label columns are ignored.
/// An empty file yields no rows.
pub fn load_csv_features(path: impl AsRef<Path>, p: usize, m: usize) -> Result<Vec<Vec<f64>>> {
    let path = path.as_ref();
    let table = read_table(path)?;
    table
        .rows
        .iter()
        .map(|(line, fields)| {
            if fields.len() != p && fields.len() != p + m {
                return Err(Error::parse(
                    path,
                    *line,
                    format!("expected {p} or {} columns, found {}", p + m, fields.len()),
                ));
            }
            parse_numeric(path, *line, &fields[..p])
        })
        .collect()
}

fn parse_numeric(path: &Path, line: usize, fields: &[String]) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|f| {
            f.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(path, line, format!("non-numeric value {f:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_tmp(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    #[test]
    fn four_columns_two_labels() {
        let f = write_tmp("0.5,1,0,1\n2,3,1,1\n");
        let ds = load_csv(f.path(), 2).unwrap();
        assert_eq!(
            (ds.n_features(), ds.n_labels(), ds.n_instances()),
            (2, 2, 2)
        );
        assert_eq!(ds.labels[0], vec![false, true]);
    }

    #[test]
    fn header_is_detected() {
        let f = write_tmp("a,b,y\n1,2,0\n");
        let ds = load_csv(f.path(), 1).unwrap();
        assert_eq!(ds.feature_names, vec!["a", "b"]);
        assert_eq!(ds.label_names, vec!["y"]);
    }

    #[test]
    fn non_binary_label() {
        let f = write_tmp("1,2\n1,1\n");
        assert!(matches!(
            load_csv(f.path(), 1),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn ragged_rows() {
        let f = write_tmp("1,2,0\n1,1\n");
        assert!(matches!(
            load_csv(f.path(), 1),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn empty_file() {
        let f = write_tmp("");
        let err = load_csv(f.path(), 1).unwrap_err();
        assert!(err.to_string().contains("no rows"));
        assert!(load_csv_features(f.path(), 2, 1).unwrap().is_empty());
    }

    #[test]
    fn feature_rows_with_or_without_labels() {
        let f = write_tmp("1,2\n3,4,1\n");
        assert_eq!(
            load_csv_features(f.path(), 2, 1).unwrap(),
            vec![vec![1.0, 2.0], vec![3.0, 4.0]]
        );
        assert!(load_csv_features(f.path(), 3, 1).is_err());
    }
}
