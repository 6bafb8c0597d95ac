//! Dataset ingestion and preprocessing: ARFF/CSV loading, per-feature
//! discretization, label-cell removal and cross-validation folds.

mod arff;
mod discretize;
mod folds;
mod missing;
mod tabular;

pub use arff::{load_arff, load_arff_with_xml, parse_label_xml, LabelSpec};
pub use discretize::{
    apply_bins, discretize, Binning, BinningMethod, DiscretizeConfig, FeatureBins,
};
pub use folds::{make_folds, FoldPlan};
pub use missing::inject_missing;
pub use tabular::{load_csv, load_csv_features};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum FeatureKind {
    Numeric,
    /// Nominal attribute; values are stored as their index in this list.
    Categorical(Vec<String>),
}

/// A fully labeled multi-label dataset before discretization.
#[derive(Debug, Clone, PartialEq)]
pub struct RawDataset {
    pub name: String,
    pub feature_names: Vec<String>,
    pub feature_kinds: Vec<FeatureKind>,
    pub label_names: Vec<String>,
    /// Row-major `N x p`; categorical values hold the category index.
    pub features: Vec<Vec<f64>>,
    /// Row-major `N x m`.
    pub labels: Vec<Vec<bool>>,
}

impl RawDataset {
    pub fn n_instances(&self) -> usize {
        self.features.len()
    }

    pub fn n_features(&self) -> usize {
        self.feature_kinds.len()
    }

    pub fn n_labels(&self) -> usize {
        self.label_names.len()
    }

    /// Checks row arities against the header.
    pub fn validate(&self) -> Result<()> {
        if self.features.len() != self.labels.len() {
            return Err(Error::LengthMismatch {
                expected: self.features.len(),
                found: self.labels.len(),
            });
        }
        let (p, m) = (self.n_features(), self.n_labels());
        if self.feature_names.len() != p {
            return Err(Error::LengthMismatch {
                expected: p,
                found: self.feature_names.len(),
            });
        }
        for (row, labels) in self.features.iter().zip(&self.labels) {
            if row.len() != p {
                return Err(Error::LengthMismatch {
                    expected: p,
                    found: row.len(),
                });
            }
            if labels.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: labels.len(),
                });
            }
        }
        Ok(())
    }

    /// The rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> RawDataset {
        RawDataset {
            name: self.name.clone(),
            feature_names: self.feature_names.clone(),
            feature_kinds: self.feature_kinds.clone(),
            label_names: self.label_names.clone(),
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }
}

/// Feature bin ids plus labels that may be missing (`None`).
#[derive(Debug, Clone, PartialEq)]
pub struct DiscretizedDataset {
    /// Row-major `N x p` bin (or category) ids.
    pub features: Vec<Vec<u32>>,
    /// Number of distinct ids per feature.
    pub cardinalities: Vec<usize>,
    /// Row-major `N x m`.
    pub labels: Vec<Vec<Option<bool>>>,
    pub label_names: Vec<String>,
}

impl DiscretizedDataset {
    pub fn n_instances(&self) -> usize {
        self.features.len()
    }

    pub fn n_features(&self) -> usize {
        self.cardinalities.len()
    }

    pub fn n_labels(&self) -> usize {
        self.label_names.len()
    }

    pub fn missing_count(&self) -> usize {
        self.labels.iter().flatten().filter(|c| c.is_none()).count()
    }

    /// Ground-truth vectors; `None` for rows with any missing cell.
    pub fn complete_labels(&self, row: usize) -> Option<Vec<bool>> {
        self.labels[row].iter().copied().collect()
    }
}
