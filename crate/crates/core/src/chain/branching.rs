//! Imprecise branching: bounds over all completions of abstained labels.
//!
//! Each abstained label enters the naive product as one factor per class,
//! and the class totals do not depend on the value chosen, so the extreme
//! completion can be picked one label at a time.

use std::cmp::Ordering;

use super::ChainModel;
use crate::credal::ProbInterval;
use crate::error::{Error, Result};
use crate::ncc::{
    lower_from, marginal_prob, ncc_lower, ncc_upper, upper_from, validate_instance, CountTables,
    Hyperparams, LogProducts,
};

/// Largest abstained set [`ib_brute_force`] will enumerate.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// Completions of the abstained positions reaching the lower and upper bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalPaths {
    pub lower: Vec<(usize, bool)>,
    pub upper: Vec<(usize, bool)>,
    pub operations: usize,
}

/// Orders `num / den` for non-negative parts. Any zero denominator, `0/0`
/// included, is `+inf`: a zero in the denominator product sends the bound to
/// `0` whatever the numerator, so the search must see it as extreme.
fn cmp_ratio(a: (f64, f64), b: (f64, f64)) -> Ordering {
    match (a.1 == 0.0, b.1 == 0.0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        (false, false) => (a.0 * b.1).total_cmp(&(b.0 * a.1)),
    }
}

/// Picks, for every abstained position, the value that pushes the lower bound
/// down and the one that pushes the upper bound up. Ties go to `false`.
pub fn ib_optimal_paths(
    tables: &CountTables,
    hp: &Hyperparams,
    abstained: &[usize],
) -> OptimalPaths {
    let s = hp.s;
    let mut lower = Vec::with_capacity(abstained.len());
    let mut upper = Vec::with_capacity(abstained.len());
    let mut operations = 0;
    for &k in abstained {
        operations += 1;
        let n = |b: bool, class: bool| f64::from(tables.prev_count(k, b, class));
        // lower bound falls as (n(b|0) + s) / n(b|1) grows
        let low = |b| (n(b, false) + s, n(b, true));
        lower.push((k, cmp_ratio(low(true), low(false)) == Ordering::Greater));
        // upper bound rises as n(b|0) / (n(b|1) + s) shrinks
        let up = |b| (n(b, false), n(b, true) + s);
        upper.push((k, cmp_ratio(up(true), up(false)) == Ordering::Less));
    }
    OptimalPaths {
        lower,
        upper,
        operations,
    }
}

/// One chain step without validation: bounds plus operation count.
pub(super) fn ib_step(
    tables: &CountTables,
    hp: &Hyperparams,
    x: &[u32],
    determined: &[(usize, bool)],
    abstained: &[usize],
) -> Result<(ProbInterval, usize)> {
    let mut base = LogProducts::one();
    base.add_features(tables, hp.s, x);
    for &(k, v) in determined {
        base.add_label(tables, hp.s, k, v);
    }
    let paths = ib_optimal_paths(tables, hp, abstained);
    let (mut lo, mut hi) = (base, base);
    for &(k, v) in &paths.lower {
        lo.add_label(tables, hp.s, k, v);
    }
    for &(k, v) in &paths.upper {
        hi.add_label(tables, hp.s, k, v);
    }
    let marginal = marginal_prob(tables.n_y(), hp.laplace_alpha);
    let interval = ProbInterval::new(lower_from(marginal, &lo), upper_from(marginal, &hi))?;
    Ok((interval, 1 + paths.operations))
}

fn check_partition(
    model: &ChainModel,
    determined: &[(usize, bool)],
    abstained: &[usize],
    position: usize,
) -> Result<()> {
    if position >= model.n_labels() {
        return Err(Error::Config(format!(
            "position {position} outside a chain of {}",
            model.n_labels()
        )));
    }
    let mut seen = vec![false; position];
    for k in determined
        .iter()
        .map(|&(k, _)| k)
        .chain(abstained.iter().copied())
    {
        match seen.get_mut(k) {
            Some(slot) if !*slot => *slot = true,
            _ => {
                return Err(Error::Config(format!(
                    "position {k} listed twice or not before position {position}"
                )))
            }
        }
    }
    if let Some(k) = seen.iter().position(|&s| !s) {
        return Err(Error::Config(format!(
            "position {k} is neither determined nor abstained"
        )));
    }
    Ok(())
}

/// Bounds at `position` over all completions of the `abstained` earlier
/// positions, in time linear in their number.
pub fn ib_bounds(
    model: &ChainModel,
    x: &[u32],
    determined: &[(usize, bool)],
    abstained: &[usize],
    position: usize,
) -> Result<ProbInterval> {
    check_partition(model, determined, abstained, position)?;
    let tables = model.tables(position);
    validate_instance(tables, x, determined)?;
    ib_step(tables, &model.hyperparams(), x, determined, abstained).map(|(i, _)| i)
}

/// Same as [`ib_bounds`] by enumerating every completion. Refuses more than
/// [`BRUTE_FORCE_LIMIT`] abstained positions.
pub fn ib_brute_force(
    model: &ChainModel,
    x: &[u32],
    determined: &[(usize, bool)],
    abstained: &[usize],
    position: usize,
) -> Result<ProbInterval> {
    if abstained.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::GuardExceeded {
            abstained: abstained.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    check_partition(model, determined, abstained, position)?;
    let tables = model.tables(position);
    validate_instance(tables, x, determined)?;
    let hp = model.hyperparams();
    let (mut lower, mut upper) = (f64::INFINITY, f64::NEG_INFINITY);
    for mask in 0u32..(1u32 << abstained.len()) {
        let completion = abstained
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, mask >> i & 1 == 1));
        let prefix = || determined.iter().copied().chain(completion.clone());
        lower = lower.min(ncc_lower(tables, &hp, x, prefix()));
        upper = upper.max(ncc_upper(tables, &hp, x, prefix()));
    }
    ProbInterval::new(lower, upper)
}
