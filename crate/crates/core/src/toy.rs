//! Small two-label datasets used by the examples and tests.

use crate::data::{FeatureKind, RawDataset};

fn build(name: &str, cells: &[(f64, bool, bool, usize)]) -> RawDataset {
    let mut features = Vec::new();
    let mut labels = Vec::new();
    for &(x, y1, y2, count) in cells {
        for _ in 0..count {
            features.push(vec![x]);
            labels.push(vec![y1, y2]);
        }
    }
    RawDataset {
        name: name.into(),
        feature_names: vec!["x".into()],
        feature_kinds: vec![FeatureKind::Numeric],
        label_names: vec!["y1".into(), "y2".into()],
        features,
        labels,
    }
}

/// 25 rows, one constant feature. Label frequencies give
/// `P(y1=1) = 0.6`, `P(y2=1 | y1=1) = 0.6`, `P(y2=0) = 0.6` and
/// `P(y1=0 | y2=0) = 0.6`, so the greedy chain answers `(1,1)` in the order
/// `(y1, y2)` and `(0,0)` in the order `(y2, y1)`.
/// Fit with `laplace_alpha = 0` to get those numbers exactly.
pub fn order_bias() -> RawDataset {
    build(
        "order_bias",
        &[
            (0.0, true, true, 9),
            (0.0, true, false, 6),
            (0.0, false, true, 1),
            (0.0, false, false, 9),
        ],
    )
}

/// 20 rows, one binary feature. With `s = 2` and the test point `x = 0`, the
/// first label abstains and the second gets the branching interval
/// `[0.1, 0.6]`, so the chain predicts `(*, *)`.
pub fn branching() -> RawDataset {
    build(
        "branching",
        &[
            (0.0, false, false, 1),
            (0.0, true, false, 3),
            (1.0, false, false, 2),
            (1.0, true, false, 4),
            (0.0, false, true, 1),
            (1.0, false, true, 3),
            (1.0, true, true, 6),
        ],
    )
}

pub const BRANCHING_S: f64 = 2.0;
