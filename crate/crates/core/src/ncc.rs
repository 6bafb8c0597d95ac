//! Naive credal classifier for one position of a label chain.
//!
//! Class-conditional probabilities of features and of earlier labels are
//! bounded with the imprecise Dirichlet model; the class marginal is a
//! precise, Laplace-smoothed estimate. All products are accumulated as sums
//! of logarithms, with `-inf` standing for a zero factor.

use crate::credal::ProbInterval;
use crate::data::DiscretizedDataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyperparams {
    /// IDM prior strength; `0` recovers naive Bayes.
    pub s: f64,
    /// Additive smoothing of the class marginal.
    pub laplace_alpha: f64,
}

impl Hyperparams {
    pub fn new(s: f64, laplace_alpha: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Config(format!(
                "s must be a nonnegative number, got {s}"
            )));
        }
        if !(laplace_alpha >= 0.0 && laplace_alpha.is_finite()) {
            return Err(Error::Config(format!(
                "laplace_alpha must be nonnegative, got {laplace_alpha}"
            )));
        }
        Ok(Hyperparams { s, laplace_alpha })
    }

    pub fn with_s(self, s: f64) -> Result<Self> {
        Hyperparams::new(s, self.laplace_alpha)
    }

    pub fn is_precise(&self) -> bool {
        self.s == 0.0
    }
}

impl Default for Hyperparams {
    fn default() -> Self {
        Hyperparams {
            s: 1.0,
            laplace_alpha: 1.0,
        }
    }
}

/// Occurrence counts backing the classifier at one chain position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTables {
    position: usize,
    label: usize,
    n_y: [u32; 2],
    /// `[feature][bin][class]`
    features: Vec<Vec<[u32; 2]>>,
    /// `[earlier position][value][class]`
    previous: Vec<[[u32; 2]; 2]>,
}

impl CountTables {
    pub fn position(&self) -> usize {
        self.position
    }

    /// Dataset index of the label predicted at this position.
    pub fn label(&self) -> usize {
        self.label
    }

    /// Counts of the label being `0` and `1` among observed cells.
    pub fn n_y(&self) -> [u32; 2] {
        self.n_y
    }

    pub fn n_observed(&self) -> u32 {
        self.n_y[0] + self.n_y[1]
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    /// `n(x_i = bin | y = class)`; zero for bins never seen in training.
    pub fn feature_count(&self, feature: usize, bin: u32, class: bool) -> u32 {
        self.features[feature]
            .get(bin as usize)
            .map_or(0, |c| c[class as usize])
    }

    /// `n(y_k = value | y = class)` for an earlier chain position `k`,
    /// over instances where both labels are observed.
    pub fn prev_count(&self, k: usize, value: bool, class: bool) -> u32 {
        self.previous[k][value as usize][class as usize]
    }

    pub fn prev_total(&self, k: usize, class: bool) -> u32 {
        self.prev_count(k, false, class) + self.prev_count(k, true, class)
    }
}

fn check_order(order: &[usize], m: usize) -> Result<()> {
    if order.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: order.len(),
        });
    }
    let mut seen = vec![false; m];
    for &l in order {
        if l >= m || std::mem::replace(&mut seen[l], true) {
            return Err(Error::Config(format!(
                "label order {order:?} is not a permutation of 0..{m}"
            )));
        }
    }
    Ok(())
}

/// Counts for chain position `j` (0-based) of `order`.
///
/// Only instances whose label at `j` is observed contribute. Pairwise counts
/// with an earlier position additionally require that label to be observed.
pub fn fit_counts(train: &DiscretizedDataset, order: &[usize], j: usize) -> Result<CountTables> {
    check_order(order, train.n_labels())?;
    if j >= order.len() {
        return Err(Error::Config(format!(
            "position {j} outside a chain of {}",
            order.len()
        )));
    }
    fit_position(train, order, j)
}

pub(crate) fn fit_position(
    train: &DiscretizedDataset,
    order: &[usize],
    j: usize,
) -> Result<CountTables> {
    let tables = count_position(train, order, j);
    if tables.n_observed() == 0 {
        return Err(Error::UnobservedLabel {
            label: tables.label,
            name: train
                .label_names
                .get(tables.label)
                .cloned()
                .unwrap_or_default(),
        });
    }
    Ok(tables)
}

/// Counts without the observed-label check; all-zero tables are allowed.
pub(crate) fn count_position(train: &DiscretizedDataset, order: &[usize], j: usize) -> CountTables {
    let label = order[j];
    let mut n_y = [0u32; 2];
    let mut features: Vec<Vec<[u32; 2]>> = train
        .cardinalities
        .iter()
        .map(|&c| vec![[0, 0]; c])
        .collect();
    let mut previous = vec![[[0u32; 2]; 2]; j];

    for (x, labels) in train.features.iter().zip(&train.labels) {
        let Some(class) = labels[label] else { continue };
        let a = class as usize;
        n_y[a] += 1;
        for (counts, &bin) in features.iter_mut().zip(x) {
            if let Some(c) = counts.get_mut(bin as usize) {
                c[a] += 1;
            }
        }
        for (k, slot) in previous.iter_mut().enumerate() {
            if let Some(b) = labels[order[k]] {
                slot[b as usize][a] += 1;
            }
        }
    }
    CountTables {
        position: j,
        label,
        n_y,
        features,
        previous,
    }
}

/// Imprecise Dirichlet bounds `[n / (N + s), (n + s) / (N + s)]`.
///
/// With no data and `s = 0` both ratios are `0/0`, which is taken as `0`.
pub fn idm_interval(count: f64, class_total: f64, s: f64) -> Result<ProbInterval> {
    if !(0.0 <= count && count <= class_total) || s.is_nan() || s < 0.0 {
        return Err(Error::Config(format!(
            "IDM needs 0 <= count <= total and s >= 0 (count {count}, total {class_total}, s {s})"
        )));
    }
    let denom = class_total + s;
    if denom == 0.0 {
        return ProbInterval::precise(0.0);
    }
    ProbInterval::new(count / denom, (count + s) / denom)
}

/// Laplace-smoothed `[P(y = 0), P(y = 1)]`.
pub fn marginal_prob(n_y: [u32; 2], laplace_alpha: f64) -> [f64; 2] {
    let total = f64::from(n_y[0]) + f64::from(n_y[1]) + 2.0 * laplace_alpha;
    if total == 0.0 {
        return [0.5, 0.5];
    }
    [
        (f64::from(n_y[0]) + laplace_alpha) / total,
        (f64::from(n_y[1]) + laplace_alpha) / total,
    ]
}

/// Log-products of lower and upper conditional bounds, per class.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogProducts {
    lower: [f64; 2],
    upper: [f64; 2],
}

#[inline]
fn ln_ratio(num: f64, den: f64) -> f64 {
    // 0/0 counts as a zero factor
    if den == 0.0 {
        f64::NEG_INFINITY
    } else {
        num.ln() - den.ln()
    }
}

impl LogProducts {
    pub(crate) fn one() -> Self {
        LogProducts {
            lower: [0.0; 2],
            upper: [0.0; 2],
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, counts: [u32; 2], totals: [u32; 2], s: f64) {
        for a in 0..2 {
            let (c, t) = (f64::from(counts[a]), f64::from(totals[a]));
            self.lower[a] += ln_ratio(c, t + s);
            self.upper[a] += ln_ratio(c + s, t + s);
        }
    }

    pub(crate) fn add_features(&mut self, tables: &CountTables, s: f64, x: &[u32]) {
        for (i, &bin) in x.iter().enumerate() {
            self.add(
                [
                    tables.feature_count(i, bin, false),
                    tables.feature_count(i, bin, true),
                ],
                tables.n_y,
                s,
            );
        }
    }

    #[inline]
    pub(crate) fn add_label(&mut self, tables: &CountTables, s: f64, k: usize, value: bool) {
        self.add(
            [
                tables.prev_count(k, value, false),
                tables.prev_count(k, value, true),
            ],
            [tables.prev_total(k, false), tables.prev_total(k, true)],
            s,
        );
    }
}

/// `(1 + exp(num - den))^-1` with the zero-factor conventions: a zero
/// denominator sends the bound to `0` (including `0/0`), a zero numerator
/// alone sends it to `1`.
#[inline]
fn posterior_from_logs(ln_num: f64, ln_den: f64) -> f64 {
    if ln_den == f64::NEG_INFINITY {
        0.0
    } else if ln_num == f64::NEG_INFINITY {
        1.0
    } else {
        1.0 / (1.0 + (ln_num - ln_den).exp())
    }
}

pub(crate) fn lower_from(marginal: [f64; 2], logs: &LogProducts) -> f64 {
    posterior_from_logs(
        marginal[0].ln() + logs.upper[0],
        marginal[1].ln() + logs.lower[1],
    )
}

pub(crate) fn upper_from(marginal: [f64; 2], logs: &LogProducts) -> f64 {
    posterior_from_logs(
        marginal[0].ln() + logs.lower[0],
        marginal[1].ln() + logs.upper[1],
    )
}

fn check_instance(tables: &CountTables, x: &[u32], prefix: &[(usize, bool)]) -> Result<()> {
    if x.len() != tables.n_features() {
        return Err(Error::LengthMismatch {
            expected: tables.n_features(),
            found: x.len(),
        });
    }
    if let Some(&(k, _)) = prefix.iter().find(|(k, _)| *k >= tables.position) {
        return Err(Error::Config(format!(
            "conditioning position {k} is not before position {}",
            tables.position
        )));
    }
    Ok(())
}

fn log_products(tables: &CountTables, s: f64, x: &[u32], prefix: &[(usize, bool)]) -> LogProducts {
    let mut logs = LogProducts::one();
    logs.add_features(tables, s, x);
    for &(k, value) in prefix {
        logs.add_label(tables, s, k, value);
    }
    logs
}

/// Lower and upper probability that the label at this position is relevant,
/// given the discretized instance `x` and values for some earlier positions.
pub fn ncc_bounds(
    tables: &CountTables,
    hp: &Hyperparams,
    x: &[u32],
    prefix: &[(usize, bool)],
) -> Result<ProbInterval> {
    check_instance(tables, x, prefix)?;
    let marginal = marginal_prob(tables.n_y, hp.laplace_alpha);
    let logs = log_products(tables, hp.s, x, prefix);
    ProbInterval::new(lower_from(marginal, &logs), upper_from(marginal, &logs))
}

/// Naive Bayes posterior of relevance (the `s = 0` case of [`ncc_bounds`]).
pub fn precise_posterior(
    tables: &CountTables,
    laplace_alpha: f64,
    x: &[u32],
    prefix: &[(usize, bool)],
) -> Result<f64> {
    check_instance(tables, x, prefix)?;
    let marginal = marginal_prob(tables.n_y, laplace_alpha);
    Ok(lower_from(marginal, &log_products(tables, 0.0, x, prefix)))
}

/// Lower bound only.
pub(crate) fn ncc_lower(
    tables: &CountTables,
    hp: &Hyperparams,
    x: &[u32],
    prefix: impl Iterator<Item = (usize, bool)>,
) -> f64 {
    let mut logs = LogProducts::one();
    logs.add_features(tables, hp.s, x);
    for (k, v) in prefix {
        logs.add_label(tables, hp.s, k, v);
    }
    lower_from(marginal_prob(tables.n_y, hp.laplace_alpha), &logs)
}

/// Upper bound only.
pub(crate) fn ncc_upper(
    tables: &CountTables,
    hp: &Hyperparams,
    x: &[u32],
    prefix: impl Iterator<Item = (usize, bool)>,
) -> f64 {
    let mut logs = LogProducts::one();
    logs.add_features(tables, hp.s, x);
    for (k, v) in prefix {
        logs.add_label(tables, hp.s, k, v);
    }
    upper_from(marginal_prob(tables.n_y, hp.laplace_alpha), &logs)
}

pub(crate) fn validate_instance(
    tables: &CountTables,
    x: &[u32],
    prefix: &[(usize, bool)],
) -> Result<()> {
    check_instance(tables, x, prefix)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn toy() -> DiscretizedDataset {
        // y1 = {1,1,0,0}, y2 = {1,0,1,0}, one binary feature
        DiscretizedDataset {
            features: vec![vec![0], vec![1], vec![0], vec![1]],
            cardinalities: vec![2],
            labels: vec![
                vec![Some(true), Some(true)],
                vec![Some(true), Some(false)],
                vec![Some(false), Some(true)],
                vec![Some(false), Some(false)],
            ],
            label_names: vec!["y1".into(), "y2".into()],
        }
    }

    #[test]
    fn hand_counts() {
        let t = fit_counts(&toy(), &[0, 1], 1).unwrap();
        assert_eq!(t.n_y(), [2, 2]);
        assert_eq!(t.prev_count(0, true, true), 1);
        assert_eq!(t.prev_count(0, true, false), 1);
        assert_eq!(t.prev_total(0, true), 2);
        // both y2=1 rows have x=0
        assert_eq!(t.feature_count(0, 0, true), 2);
        assert_eq!(t.feature_count(0, 1, true), 0);
        assert_eq!(t.feature_count(0, 7, true), 0);
    }

    #[test]
    fn unobserved_label_is_an_error() {
        let mut d = toy();
        for row in &mut d.labels {
            row[1] = None;
        }
        let err = fit_counts(&d, &[0, 1], 1).unwrap_err();
        assert!(matches!(err, Error::UnobservedLabel { label: 1, .. }));
        assert!(err.to_string().contains("y2"));
    }

    #[test]
    fn pairwise_deletion() {
        let mut d = toy();
        d.labels[0][0] = None; // y1 missing where y2 = 1
        let t = fit_counts(&d, &[0, 1], 1).unwrap();
        assert_eq!(t.n_observed(), 4);
        assert_eq!(t.prev_total(0, true), 1);
        assert_eq!(t.prev_total(0, false), 2);
        d.labels[1][1] = None;
        let t = fit_counts(&d, &[0, 1], 1).unwrap();
        assert_eq!(t.n_y(), [1, 2]);
    }

    #[test]
    fn rejects_bad_order() {
        assert!(fit_counts(&toy(), &[0, 0], 1).is_err());
        assert!(fit_counts(&toy(), &[0], 0).is_err());
        assert!(fit_counts(&toy(), &[1, 0], 2).is_err());
    }

    #[test]
    fn idm_examples() {
        let i = idm_interval(3.0, 7.0, 2.0).unwrap();
        assert_abs_diff_eq!(i.lower(), 3.0 / 9.0, epsilon = 1e-15);
        assert_abs_diff_eq!(i.upper(), 5.0 / 9.0, epsilon = 1e-15);
        let i = idm_interval(4.0, 10.0, 0.0).unwrap();
        assert!(i.is_precise() && i.lower() == 0.4);
        let i = idm_interval(0.0, 10.0, 1.0).unwrap();
        assert_eq!((i.lower(), i.upper()), (0.0, 1.0 / 11.0));
        assert_eq!(
            idm_interval(0.0, 0.0, 0.0).unwrap(),
            ProbInterval::precise(0.0).unwrap()
        );
        assert_eq!(
            idm_interval(0.0, 0.0, 2.0).unwrap(),
            ProbInterval::vacuous()
        );
        assert!(idm_interval(5.0, 3.0, 1.0).is_err());
    }

    #[test]
    fn idm_nested_in_s() {
        for (c, t) in [(0.0, 0.0), (0.0, 5.0), (3.0, 7.0), (7.0, 7.0)] {
            let mut prev = idm_interval(c, t, 0.0).unwrap();
            for s in [0.1, 0.5, 1.0, 2.0, 5.5, 100.0] {
                let next = idm_interval(c, t, s).unwrap();
                assert!(next.encloses(&prev, 0.0), "{c} {t} {s}");
                prev = next;
            }
        }
    }

    #[test]
    fn marginal_examples() {
        assert_eq!(marginal_prob([2, 2], 1.0), [0.5, 0.5]);
        let p = marginal_prob([0, 4], 1.0);
        assert_abs_diff_eq!(p[0], 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p[1], 5.0 / 6.0, epsilon = 1e-15);
        assert_eq!(marginal_prob([0, 0], 1.0), [0.5, 0.5]);
    }

    #[test]
    fn marginal_only_when_no_features() {
        let d = DiscretizedDataset {
            features: vec![vec![]; 4],
            cardinalities: vec![],
            labels: vec![
                vec![Some(true)],
                vec![Some(true)],
                vec![Some(false)],
                vec![Some(false)],
            ],
            label_names: vec!["y".into()],
        };
        let t = fit_counts(&d, &[0], 0).unwrap();
        let hp = Hyperparams::new(0.0, 1.0).unwrap();
        assert_eq!(
            ncc_bounds(&t, &hp, &[], &[]).unwrap(),
            ProbInterval::precise(0.5).unwrap()
        );
    }

    #[test]
    fn prefix_must_precede_position() {
        let t = fit_counts(&toy(), &[0, 1], 1).unwrap();
        let hp = Hyperparams::default();
        assert!(ncc_bounds(&t, &hp, &[0], &[(1, true)]).is_err());
        assert!(ncc_bounds(&t, &hp, &[0, 0], &[]).is_err());
    }

    #[test]
    fn zero_factor_conventions() {
        assert_eq!(
            posterior_from_logs(f64::NEG_INFINITY, f64::NEG_INFINITY),
            0.0
        );
        assert_eq!(posterior_from_logs(0.0, f64::NEG_INFINITY), 0.0);
        assert_eq!(posterior_from_logs(f64::NEG_INFINITY, 0.0), 1.0);
        assert_eq!(posterior_from_logs(0.0, 0.0), 0.5);
        // huge ratios do not produce NaN
        assert_eq!(posterior_from_logs(2000.0, 0.0), 0.0);
        assert_eq!(posterior_from_logs(0.0, 2000.0), 1.0);
    }

    #[test]
    fn hyperparams_validation() {
        assert!(Hyperparams::new(-1.0, 1.0).is_err());
        assert!(Hyperparams::new(f64::NAN, 1.0).is_err());
        assert!(Hyperparams::new(1.0, -0.5).is_err());
        assert!(Hyperparams::default().with_s(0.0).unwrap().is_precise());
    }
}
