//! Classifier chains over naive credal classifiers.
//!
//! A [`ChainModel`] holds one set of count tables per chain position. At
//! prediction time each position yields an interval for "label is relevant"
//! which is turned into `0`, `1` or `*`. The strategies differ only in how
//! earlier abstentions enter the conditioning:
//!
//! * [`Strategy::Precise`] ignores `s` and never abstains.
//! * [`Strategy::ImpreciseBranching`] takes the extreme bounds over every
//!   completion of the abstained labels, found in one linear pass.
//! * [`Strategy::Marginalization`] drops abstained labels from the
//!   conditioning altogether.

mod branching;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;

pub use branching::{ib_bounds, ib_brute_force, ib_optimal_paths, OptimalPaths, BRUTE_FORCE_LIMIT};

use crate::credal::{decide, IndexSets, LabelState, PartialLabelVector, ProbInterval};
use crate::data::DiscretizedDataset;
use crate::error::{Error, Result};
use crate::ncc::{
    count_position, fit_position, ncc_bounds, precise_posterior, CountTables, Hyperparams,
};
use crate::seed::rng_for;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Strategy {
    Precise,
    ImpreciseBranching,
    Marginalization,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [
        Strategy::Precise,
        Strategy::ImpreciseBranching,
        Strategy::Marginalization,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Precise => "precise",
            Strategy::ImpreciseBranching => "ib",
            Strategy::Marginalization => "mar",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "precise" | "nbc" => Ok(Strategy::Precise),
            "ib" | "branching" | "imprecise-branching" => Ok(Strategy::ImpreciseBranching),
            "mar" | "marginalization" => Ok(Strategy::Marginalization),
            other => Err(Error::Config(format!(
                "unknown strategy {other:?} (expected precise, ib or mar)"
            ))),
        }
    }
}

/// A fitted chain. Cloning is cheap; the count tables are shared.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainModel {
    order: Vec<usize>,
    tables: Arc<Vec<CountTables>>,
    hp: Hyperparams,
    n_features: usize,
}

/// Uniformly random label order drawn from `seed`.
pub fn random_order(m: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(&mut rng_for(&[seed, m as u64]));
    order
}

impl ChainModel {
    /// Fits count tables at every position of `order`, where `order[j]` is
    /// the dataset index of the label predicted at position `j`.
    pub fn fit(train: &DiscretizedDataset, order: &[usize], hp: Hyperparams) -> Result<Self> {
        if train.n_instances() == 0 {
            return Err(Error::Config(
                "cannot fit a chain on an empty training set".into(),
            ));
        }
        if order.is_empty() {
            return Err(Error::Config("label order is empty".into()));
        }
        // validates the permutation once
        let first = crate::ncc::fit_counts(train, order, 0)?;
        let mut tables = Vec::with_capacity(order.len());
        tables.push(first);
        for j in 1..order.len() {
            tables.push(fit_position(train, order, j)?);
        }
        Ok(Self::from_tables(train, order, tables, hp))
    }

    /// Like [`ChainModel::fit`], but a label with no observed value gets
    /// all-zero counts instead of an error. Such a position abstains when
    /// `s > 0`.
    pub fn fit_tolerant(
        train: &DiscretizedDataset,
        order: &[usize],
        hp: Hyperparams,
    ) -> Result<Self> {
        if train.n_instances() == 0 {
            return Err(Error::Config(
                "cannot fit a chain on an empty training set".into(),
            ));
        }
        let first = crate::ncc::fit_counts(train, order, 0).or_else(|e| match e {
            Error::UnobservedLabel { .. } => Ok(count_position(train, order, 0)),
            e => Err(e),
        })?;
        let mut tables = Vec::with_capacity(order.len());
        tables.push(first);
        tables.extend((1..order.len()).map(|j| count_position(train, order, j)));
        Ok(Self::from_tables(train, order, tables, hp))
    }

    fn from_tables(
        train: &DiscretizedDataset,
        order: &[usize],
        tables: Vec<CountTables>,
        hp: Hyperparams,
    ) -> Self {
        ChainModel {
            order: order.to_vec(),
            tables: Arc::new(tables),
            hp,
            n_features: train.n_features(),
        }
    }

    /// Same tables, different hyperparameters.
    pub fn with_hyperparams(&self, hp: Hyperparams) -> Self {
        ChainModel { hp, ..self.clone() }
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn hyperparams(&self) -> Hyperparams {
        self.hp
    }

    pub fn n_labels(&self) -> usize {
        self.order.len()
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn tables(&self, position: usize) -> &CountTables {
        &self.tables[position]
    }

    fn check_x(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.n_features {
            return Err(Error::LengthMismatch {
                expected: self.n_features,
                found: x.len(),
            });
        }
        Ok(())
    }

    /// Credal bounds at `position` given values for some earlier positions.
    pub fn position_bounds(
        &self,
        x: &[u32],
        position: usize,
        prefix: &[(usize, bool)],
    ) -> Result<ProbInterval> {
        ncc_bounds(self.position_tables(position)?, &self.hp, x, prefix)
    }

    /// Naive Bayes posterior at `position`, ignoring `s`.
    pub fn precise_posterior(
        &self,
        x: &[u32],
        position: usize,
        prefix: &[(usize, bool)],
    ) -> Result<f64> {
        precise_posterior(
            self.position_tables(position)?,
            self.hp.laplace_alpha,
            x,
            prefix,
        )
    }

    fn position_tables(&self, position: usize) -> Result<&CountTables> {
        self.tables.get(position).ok_or_else(|| {
            Error::Config(format!(
                "position {position} outside a chain of {}",
                self.n_labels()
            ))
        })
    }

    /// Classical chaining: predict each label with the `>= 0.5` rule and
    /// condition later labels on it.
    pub fn predict_precise(&self, x: &[u32]) -> Result<PartialLabelVector> {
        self.predict(x, Strategy::Precise)
    }

    pub fn predict(&self, x: &[u32], strategy: Strategy) -> Result<PartialLabelVector> {
        self.predict_traced(x, strategy).map(|p| p.labels)
    }

    /// Prediction together with the interval and work done at every step.
    pub fn predict_traced(&self, x: &[u32], strategy: Strategy) -> Result<Prediction> {
        self.check_x(x)?;
        let tie_to_one = strategy == Strategy::Precise || self.hp.is_precise();
        let mut sets = IndexSets::default();
        let mut determined: Vec<(usize, bool)> = Vec::with_capacity(self.n_labels());
        let mut states = vec![LabelState::Abstain; self.n_labels()];
        let mut steps = Vec::with_capacity(self.n_labels());

        for (j, tables) in self.tables.iter().enumerate() {
            let (interval, operations) = match strategy {
                Strategy::Precise => {
                    let p = precise_posterior(tables, self.hp.laplace_alpha, x, &determined)?;
                    (ProbInterval::precise(p)?, 1)
                }
                Strategy::Marginalization => (ncc_bounds(tables, &self.hp, x, &determined)?, 1),
                Strategy::ImpreciseBranching => {
                    branching::ib_step(tables, &self.hp, x, &determined, &sets.abstained)?
                }
            };
            let state = decide(interval, tie_to_one);
            sets.record(j, state);
            if let Some(v) = state.value() {
                determined.push((j, v));
            }
            states[self.order[j]] = state;
            steps.push(StepTrace {
                position: j,
                label: self.order[j],
                interval,
                state,
                operations,
            });
        }
        debug_assert!(sets.partitions(self.n_labels()));
        Ok(Prediction {
            labels: PartialLabelVector::new(states),
            steps,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepTrace {
    pub position: usize,
    pub label: usize,
    /// Interval for the label being relevant.
    pub interval: ProbInterval,
    pub state: LabelState,
    /// Bound evaluations plus path-search steps spent at this position.
    pub operations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    /// States in dataset label order.
    pub labels: PartialLabelVector,
    /// Steps in chain order.
    pub steps: Vec<StepTrace>,
}

impl Prediction {
    pub fn operations(&self) -> usize {
        self.steps.iter().map(|s| s.operations).sum()
    }
}

pub fn fit(train: &DiscretizedDataset, order: &[usize], hp: Hyperparams) -> Result<ChainModel> {
    ChainModel::fit(train, order, hp)
}

pub fn predict(model: &ChainModel, x: &[u32], strategy: Strategy) -> Result<PartialLabelVector> {
    model.predict(x, strategy)
}

pub fn predict_precise(model: &ChainModel, x: &[u32]) -> Result<PartialLabelVector> {
    model.predict_precise(x)
}

/// Bounds at `position` conditioning only on determined labels; abstained
/// labels contribute no factor.
pub fn mar_bounds(
    model: &ChainModel,
    x: &[u32],
    determined: &[(usize, bool)],
    position: usize,
) -> Result<ProbInterval> {
    model.position_bounds(x, position, determined)
}
