use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::seed::rng_for;

/// Repeated k-fold assignment of instances to test folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub repeats: usize,
    pub folds: usize,
    pub seed: u64,
    /// `assignments[r][i]` is the test fold of instance `i` in repeat `r`.
    pub assignments: Vec<Vec<usize>>,
}

impl FoldPlan {
    pub fn n_instances(&self) -> usize {
        self.assignments.first().map_or(0, Vec::len)
    }

    pub fn test_indices(&self, repeat: usize, fold: usize) -> Vec<usize> {
        self.indices(repeat, |f| f == fold)
    }

    pub fn train_indices(&self, repeat: usize, fold: usize) -> Vec<usize> {
        self.indices(repeat, |f| f != fold)
    }

    fn indices(&self, repeat: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
        self.assignments[repeat]
            .iter()
            .enumerate()
            .filter(|&(_, &f)| keep(f))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Shuffles instances once per repeat and deals them into `folds` folds
/// whose sizes differ by at most one.
pub fn make_folds(n: usize, repeats: usize, folds: usize, seed: u64) -> Result<FoldPlan> {
    if folds < 2 {
        return Err(Error::Config(format!("need at least 2 folds, got {folds}")));
    }
    if n < folds {
        return Err(Error::Config(format!(
            "{n} instances cannot fill {folds} folds"
        )));
    }
    if repeats == 0 {
        return Err(Error::Config("need at least one repeat".into()));
    }
    let assignments = (0..repeats)
        .map(|r| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng_for(&[seed, r as u64]));
            let mut fold_of = vec![0; n];
            for (rank, &i) in order.iter().enumerate() {
                fold_of[i] = rank % folds;
            }
            fold_of
        })
        .collect();
    Ok(FoldPlan {
        repeats,
        folds,
        seed,
        assignments,
    })
}
