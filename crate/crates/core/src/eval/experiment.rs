use std::time::Instant;

use rayon::prelude::*;

use super::{completeness, set_accuracy, MetricRow};
use crate::chain::{random_order, ChainModel, Strategy};
use crate::data::{
    apply_bins, discretize, inject_missing, make_folds, DiscretizeConfig, RawDataset,
};
use crate::error::{Error, Result};
use crate::ncc::Hyperparams;
use crate::seed::derive_seed;

pub const DEFAULT_MISSING_PCTS: [f64; 5] = [0.0, 20.0, 40.0, 60.0, 80.0];

/// `0.0, 0.5, ..., 5.5`.
pub fn default_s_values() -> Vec<f64> {
    (0..12).map(|i| f64::from(i) * 0.5).collect()
}

/// Everything that defines one cross-validation run.
#[derive(Debug, Clone)]
pub struct ExperimentGrid {
    pub dataset: String,
    pub data: RawDataset,
    pub discretize: DiscretizeConfig,
    pub s_values: Vec<f64>,
    pub missing_pcts: Vec<f64>,
    pub strategies: Vec<Strategy>,
    pub repeats: usize,
    pub folds: usize,
    pub seed: u64,
    pub laplace_alpha: f64,
    /// Fixed label order; a seeded random one per (repeat, fold) otherwise.
    pub order: Option<Vec<usize>>,
    /// Worker threads; `0` uses the global pool.
    pub threads: usize,
    /// Record elapsed time per row. Off by default so output is reproducible.
    pub timing: bool,
}

impl ExperimentGrid {
    pub fn new(data: RawDataset) -> Self {
        ExperimentGrid {
            dataset: data.name.clone(),
            data,
            discretize: DiscretizeConfig::default(),
            s_values: default_s_values(),
            missing_pcts: DEFAULT_MISSING_PCTS.to_vec(),
            strategies: Strategy::ALL.to_vec(),
            repeats: 10,
            folds: 10,
            seed: 0,
            laplace_alpha: 1.0,
            order: None,
            threads: 0,
            timing: false,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.repeats
            * self.folds
            * self.s_values.len()
            * self.missing_pcts.len()
            * self.strategies.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.s_values.is_empty() || self.missing_pcts.is_empty() || self.strategies.is_empty() {
            return Err(Error::Config(
                "s values, missing percentages and strategies must be nonempty".into(),
            ));
        }
        for &s in &self.s_values {
            Hyperparams::new(s, self.laplace_alpha)?;
        }
        if let Some(pct) = self
            .missing_pcts
            .iter()
            .find(|p| !(0.0..=100.0).contains(*p))
        {
            return Err(Error::Config(format!(
                "missing percentage {pct} outside [0, 100]"
            )));
        }
        if let Some(order) = &self.order {
            let mut sorted = order.clone();
            sorted.sort_unstable();
            if sorted != (0..self.data.n_labels()).collect::<Vec<_>>() {
                return Err(Error::Config(format!(
                    "label order {order:?} is not a permutation of 0..{}",
                    self.data.n_labels()
                )));
            }
        }
        self.data.validate()
    }
}

/// Runs every (repeat, fold, missing, s, strategy) combination. Rows come
/// back in that nesting order regardless of scheduling.
pub fn run_experiment(grid: &ExperimentGrid) -> Result<Vec<MetricRow>> {
    grid.validate()?;
    let plan = make_folds(grid.data.n_instances(), grid.repeats, grid.folds, grid.seed)?;
    let cells: Vec<(usize, usize)> = (0..grid.repeats)
        .flat_map(|r| (0..grid.folds).map(move |f| (r, f)))
        .collect();
    let run = || {
        cells
            .par_iter()
            .map(|&(repeat, fold)| {
                run_cell(
                    grid,
                    &plan.train_indices(repeat, fold),
                    &plan.test_indices(repeat, fold),
                    repeat,
                    fold,
                )
                .map_err(|e| Error::Experiment {
                    dataset: grid.dataset.clone(),
                    repeat,
                    fold,
                    source: Box::new(e),
                })
            })
            .collect::<Result<Vec<_>>>()
    };
    let per_cell = if grid.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(grid.threads)
            .build()
            .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?
            .install(run)?
    } else {
        run()?
    };
    Ok(per_cell.into_iter().flatten().collect())
}

fn run_cell(
    grid: &ExperimentGrid,
    train_idx: &[usize],
    test_idx: &[usize],
    repeat: usize,
    fold: usize,
) -> Result<Vec<MetricRow>> {
    let (train, bins) = discretize(&grid.data.subset(train_idx), &grid.discretize)?;
    let test = apply_bins(&grid.data.subset(test_idx), &bins)?;
    let truth = &grid.data.subset(test_idx).labels;
    let m = grid.data.n_labels();
    let order = match &grid.order {
        Some(o) => o.clone(),
        None => random_order(m, derive_seed(&[grid.seed, repeat as u64, fold as u64])),
    };

    let mut rows =
        Vec::with_capacity(grid.missing_pcts.len() * grid.s_values.len() * grid.strategies.len());
    for &pct in &grid.missing_pcts {
        let seed = derive_seed(&[grid.seed, repeat as u64, fold as u64, pct.to_bits()]);
        let masked = inject_missing(&train, pct, seed)?;
        let base =
            ChainModel::fit_tolerant(&masked, &order, Hyperparams::new(0.0, grid.laplace_alpha)?)?;
        for &s in &grid.s_values {
            let model = base.with_hyperparams(Hyperparams::new(s, grid.laplace_alpha)?);
            for &strategy in &grid.strategies {
                let start = Instant::now();
                let (mut sa, mut cp) = (0.0, 0.0);
                for (x, y) in test.features.iter().zip(truth) {
                    let pred = model.predict(x, strategy)?;
                    sa += set_accuracy(&pred, y)?;
                    cp += completeness(&pred);
                }
                let n = test.n_instances();
                let denom = n.max(1) as f64;
                rows.push(MetricRow {
                    dataset: grid.dataset.clone(),
                    strategy,
                    s,
                    missing_pct: pct,
                    repeat,
                    fold,
                    n_test: n,
                    set_accuracy: sa / denom,
                    completeness: cp / denom,
                    wall_ms: if grid.timing {
                        start.elapsed().as_secs_f64() * 1e3
                    } else {
                        0.0
                    },
                });
            }
        }
    }
    Ok(rows)
}
