//! Per-feature binning fitted on training rows only.

use super::{DiscretizedDataset, FeatureKind, RawDataset};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BinningMethod {
    #[default]
    EqualFrequency,
    EqualWidth,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizeConfig {
    /// Maximum number of bins per numeric feature.
    pub z: usize,
    pub method: BinningMethod,
    /// Numeric features taking only the values 0 and 1 on the training
    /// rows are used as-is instead of being binned.
    pub keep_binary: bool,
}

impl DiscretizeConfig {
    pub fn new(z: usize) -> Self {
        DiscretizeConfig {
            z,
            method: BinningMethod::EqualFrequency,
            keep_binary: false,
        }
    }
}

impl Default for DiscretizeConfig {
    fn default() -> Self {
        DiscretizeConfig::new(6)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FeatureBins {
    /// Sorted cut points; a value maps to the number of edges strictly
    /// below it, so a value equal to an edge lands in the lower bin.
    Numeric(Vec<f64>),
    /// Ids used as-is (nominal attributes, or kept binary features).
    Passthrough(usize),
}

impl FeatureBins {
    pub fn cardinality(&self) -> usize {
        match self {
            FeatureBins::Numeric(edges) => edges.len() + 1,
            FeatureBins::Passthrough(k) => *k,
        }
    }

    pub fn bin(&self, value: f64) -> u32 {
        match self {
            FeatureBins::Numeric(edges) => edges.partition_point(|&e| e < value) as u32,
            FeatureBins::Passthrough(k) => {
                (value.max(0.0) as usize).min(k.saturating_sub(1)) as u32
            }
        }
    }
}

/// Fitted bin edges for every feature.
#[derive(Debug, Clone, PartialEq)]
pub struct Binning {
    pub z: usize,
    pub features: Vec<FeatureBins>,
}

impl Binning {
    pub fn cardinalities(&self) -> Vec<usize> {
        self.features.iter().map(FeatureBins::cardinality).collect()
    }

    pub fn bin_row(&self, row: &[f64]) -> Result<Vec<u32>> {
        if row.len() != self.features.len() {
            return Err(Error::LengthMismatch {
                expected: self.features.len(),
                found: row.len(),
            });
        }
        Ok(self
            .features
            .iter()
            .zip(row)
            .map(|(b, &v)| b.bin(v))
            .collect())
    }
}

/// Fits bins on `train` and returns the discretized training set with them.
pub fn discretize(
    train: &RawDataset,
    config: &DiscretizeConfig,
) -> Result<(DiscretizedDataset, Binning)> {
    if config.z < 2 {
        return Err(Error::Config(format!(
            "bin count z must be at least 2, got {}",
            config.z
        )));
    }
    if train.n_instances() == 0 {
        return Err(Error::Config(
            "cannot discretize an empty training set".into(),
        ));
    }
    train.validate()?;

    let features = train
        .feature_kinds
        .iter()
        .enumerate()
        .map(|(i, kind)| match kind {
            FeatureKind::Categorical(values) => FeatureBins::Passthrough(values.len()),
            FeatureKind::Numeric => {
                let mut column: Vec<f64> = train.features.iter().map(|r| r[i]).collect();
                if config.keep_binary && column.iter().all(|&v| v == 0.0 || v == 1.0) {
                    return FeatureBins::Passthrough(2);
                }
                column.sort_by(f64::total_cmp);
                FeatureBins::Numeric(match config.method {
                    BinningMethod::EqualFrequency => equal_frequency_edges(&column, config.z),
                    BinningMethod::EqualWidth => equal_width_edges(&column, config.z),
                })
            }
        })
        .collect();
    let binning = Binning {
        z: config.z,
        features,
    };
    let data = apply_bins(train, &binning)?;
    Ok((data, binning))
}

/// Maps rows onto previously fitted bins. Values outside the training range
/// fall into the first or last bin.
pub fn apply_bins(data: &RawDataset, binning: &Binning) -> Result<DiscretizedDataset> {
    if data.n_features() != binning.features.len() {
        return Err(Error::LengthMismatch {
            expected: binning.features.len(),
            found: data.n_features(),
        });
    }
    let features = data
        .features
        .iter()
        .map(|row| binning.bin_row(row))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiscretizedDataset {
        features,
        cardinalities: binning.cardinalities(),
        labels: data
            .labels
            .iter()
            .map(|r| r.iter().map(|&l| Some(l)).collect())
            .collect(),
        label_names: data.label_names.clone(),
    })
}

/// Cuts after ranks `ceil(k N / z)`, `k = 1..z-1`. Each cut sits halfway
/// between the value at that rank and the next strictly larger value, so
/// tied values never straddle a cut; cuts that coincide are merged.
fn equal_frequency_edges(sorted: &[f64], z: usize) -> Vec<f64> {
    let n = sorted.len();
    let mut edges: Vec<f64> = Vec::with_capacity(z - 1);
    for k in 1..z {
        let rank = (k * n).div_ceil(z);
        if rank == 0 || rank >= n {
            continue;
        }
        let below = sorted[rank - 1];
        let next = sorted[rank..].iter().copied().find(|&v| v > below);
        if let Some(next) = next {
            let cut = below + (next - below) / 2.0;
            if edges.last().is_none_or(|&last| cut > last) {
                edges.push(cut);
            }
        }
    }
    edges
}

fn equal_width_edges(sorted: &[f64], z: usize) -> Vec<f64> {
    let (lo, hi) = (sorted[0], sorted[sorted.len() - 1]);
    if hi <= lo {
        return Vec::new();
    }
    let width = (hi - lo) / z as f64;
    (1..z)
        .map(|k| lo + width * k as f64)
        .filter(|&c| c > lo && c < hi)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn numeric(values: &[f64]) -> RawDataset {
        RawDataset {
            name: "t".into(),
            feature_names: vec!["f".into()],
            feature_kinds: vec![FeatureKind::Numeric],
            label_names: vec!["y".into()],
            features: values.iter().map(|&v| vec![v]).collect(),
            labels: values.iter().map(|_| vec![false]).collect(),
        }
    }

    fn bins(d: &DiscretizedDataset) -> Vec<u32> {
        d.features.iter().map(|r| r[0]).collect()
    }

    /// Rank-counting oracle for distinct values: the element of 0-based rank
    /// `i` goes to the number of cut ranks `ceil(k N / z)` that are `<= i`.
    fn rank_oracle(n: usize, z: usize) -> Vec<u32> {
        (0..n)
            .map(|i| (1..z).filter(|&k| (k * n).div_ceil(z) <= i).count() as u32)
            .collect()
    }

    #[test]
    fn twelve_values_six_bins() {
        let values: Vec<f64> = (1..=12).map(f64::from).collect();
        let (d, b) = discretize(&numeric(&values), &DiscretizeConfig::new(6)).unwrap();
        assert_eq!(bins(&d), rank_oracle(12, 6));
        assert_eq!(
            b.features[0],
            FeatureBins::Numeric(vec![2.5, 4.5, 6.5, 8.5, 10.5])
        );
        for bin in 0..6 {
            assert_eq!(bins(&d).iter().filter(|&&x| x == bin).count(), 2);
        }
    }

    #[test]
    fn median_split() {
        let (d, _) =
            discretize(&numeric(&[1.0, 2.0, 3.0, 4.0]), &DiscretizeConfig::new(2)).unwrap();
        assert_eq!(bins(&d), vec![0, 0, 1, 1]);
        assert_eq!(bins(&d), rank_oracle(4, 2));
    }

    #[test]
    fn constant_feature_is_one_bin() {
        let (d, b) = discretize(&numeric(&[3.0; 7]), &DiscretizeConfig::new(6)).unwrap();
        assert_eq!(bins(&d), vec![0; 7]);
        assert_eq!(b.cardinalities(), vec![1]);
    }

    #[test]
    fn ties_collapse_bins() {
        let mut values = vec![0.0; 5];
        values.extend([1.0; 15]);
        let (d, b) = discretize(&numeric(&values), &DiscretizeConfig::new(6)).unwrap();
        assert_eq!(b.features[0], FeatureBins::Numeric(vec![0.5]));
        assert_eq!(bins(&d)[..5], [0; 5]);
        assert_eq!(bins(&d)[5..], [1; 15]);
    }

    #[test]
    fn rejects_small_z() {
        assert!(matches!(
            discretize(&numeric(&[1.0, 2.0]), &DiscretizeConfig::new(1)),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn test_values_use_train_edges() {
        let values: Vec<f64> = (1..=12).map(f64::from).collect();
        let (_, b) = discretize(&numeric(&values), &DiscretizeConfig::new(6)).unwrap();
        let test = apply_bins(&numeric(&[-100.0, 2.5, 2.6, 7.0, 1e9]), &b).unwrap();
        // clamp low, edge goes to the lower bin, in-range matches train
        assert_eq!(bins(&test), vec![0, 0, 1, 3, 5]);
    }

    #[test]
    fn arity_mismatch() {
        let (_, b) = discretize(&numeric(&[1.0, 2.0]), &DiscretizeConfig::new(2)).unwrap();
        let mut wide = numeric(&[1.0]);
        wide.feature_kinds.push(FeatureKind::Numeric);
        wide.feature_names.push("g".into());
        wide.features[0].push(0.0);
        assert!(apply_bins(&wide, &b).is_err());
    }

    #[test]
    fn equal_width_and_binary_passthrough() {
        let config = DiscretizeConfig {
            z: 4,
            method: BinningMethod::EqualWidth,
            keep_binary: true,
        };
        let (d, b) = discretize(&numeric(&[0.0, 1.0, 2.0, 3.0, 4.0]), &config).unwrap();
        assert_eq!(b.features[0], FeatureBins::Numeric(vec![1.0, 2.0, 3.0]));
        assert_eq!(bins(&d), vec![0, 0, 1, 2, 3]);
        let (d, b) = discretize(&numeric(&[0.0, 1.0, 1.0]), &config).unwrap();
        assert_eq!(b.features[0], FeatureBins::Passthrough(2));
        assert_eq!(bins(&d), vec![0, 1, 1]);
    }

    #[test]
    fn categorical_passes_through() {
        let mut ds = numeric(&[0.0, 2.0, 1.0]);
        ds.feature_kinds = vec![FeatureKind::Categorical(vec![
            "a".into(),
            "b".into(),
            "c".into(),
        ])];
        let (d, b) = discretize(&ds, &DiscretizeConfig::new(2)).unwrap();
        assert_eq!(bins(&d), vec![0, 2, 1]);
        assert_eq!(b.cardinalities(), vec![3]);
    }

    #[test]
    fn reapplying_on_train_is_identity() {
        let values = [5.0, 1.0, 1.0, 9.0, 3.3, 3.3, 3.3, 7.0, -2.0, 0.0, 8.5];
        let ds = numeric(&values);
        for z in 2..8 {
            let (d, b) = discretize(&ds, &DiscretizeConfig::new(z)).unwrap();
            assert_eq!(apply_bins(&ds, &b).unwrap(), d);
            assert!(bins(&d).iter().all(|&x| (x as usize) < z));
        }
    }
}
