//! Test-side oracles. Everything here recounts from the raw rows and works
//! in linear space, sharing no arithmetic with the library.

#![allow(dead_code)]

use credal_chain::DiscretizedDataset;
use rand::Rng;

/// Random discretized data with labels loosely tied to the first feature
/// and to each other; `missing` is the per-cell removal probability.
pub fn random_dataset(
    rng: &mut impl Rng,
    n: usize,
    p: usize,
    m: usize,
    missing: f64,
) -> DiscretizedDataset {
    let cardinalities: Vec<usize> = (0..p).map(|_| rng.gen_range(2..=4)).collect();
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<u32> = cardinalities
            .iter()
            .map(|&c| rng.gen_range(0..c as u32))
            .collect();
        let mut prev = x.first().map_or(rng.gen_bool(0.5), |&v| v % 2 == 0);
        let y: Vec<Option<bool>> = (0..m)
            .map(|_| {
                prev = if rng.gen_bool(0.7) { prev } else { !prev };
                if rng.gen_bool(missing) {
                    None
                } else {
                    Some(prev)
                }
            })
            .collect();
        features.push(x);
        labels.push(y);
    }
    DiscretizedDataset {
        features,
        cardinalities,
        labels,
        label_names: (0..m).map(|j| format!("y{j}")).collect(),
    }
}

pub fn random_instance(rng: &mut impl Rng, data: &DiscretizedDataset) -> Vec<u32> {
    data.cardinalities
        .iter()
        .map(|&c| rng.gen_range(0..c as u32))
        .collect()
}

/// Conditional frequencies for one chain position, recounted from rows.
pub struct Recount {
    pub n_class: [f64; 2],
    /// `[feature] -> (count given class 0, count given class 1)` for bin `x_i`
    pub feature: Vec<[f64; 2]>,
    /// `(k, value) -> (count, pairwise total)` per class
    pub label: Vec<(usize, bool, [f64; 2], [f64; 2])>,
}

pub fn recount(
    data: &DiscretizedDataset,
    order: &[usize],
    j: usize,
    x: &[u32],
    prefix: &[(usize, bool)],
) -> Recount {
    let target = order[j];
    let observed = |r: usize| data.labels[r][target];
    let mut n_class = [0.0; 2];
    for r in 0..data.features.len() {
        if let Some(c) = observed(r) {
            n_class[c as usize] += 1.0;
        }
    }
    let feature = x
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut c = [0.0; 2];
            for r in 0..data.features.len() {
                if let Some(cl) = observed(r) {
                    if data.features[r][i] == v {
                        c[cl as usize] += 1.0;
                    }
                }
            }
            c
        })
        .collect();
    let label = prefix
        .iter()
        .map(|&(k, b)| {
            let (mut c, mut t) = ([0.0; 2], [0.0; 2]);
            for r in 0..data.features.len() {
                if let (Some(cl), Some(v)) = (observed(r), data.labels[r][order[k]]) {
                    t[cl as usize] += 1.0;
                    if v == b {
                        c[cl as usize] += 1.0;
                    }
                }
            }
            (k, b, c, t)
        })
        .collect();
    Recount {
        n_class,
        feature,
        label,
    }
}

fn ratio(c: f64, t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        c / t
    }
}

/// `a / (a + b)` with `0/0 -> 0`.
pub fn share(a: f64, b: f64) -> f64 {
    if a == 0.0 {
        0.0
    } else {
        a / (a + b)
    }
}

pub fn marginal(rc: &Recount, alpha: f64) -> [f64; 2] {
    let total = rc.n_class[0] + rc.n_class[1] + 2.0 * alpha;
    if total == 0.0 {
        return [0.5, 0.5];
    }
    [
        (rc.n_class[0] + alpha) / total,
        (rc.n_class[1] + alpha) / total,
    ]
}

/// Naive Bayes posterior of relevance by direct products.
pub fn nbc_posterior(
    data: &DiscretizedDataset,
    order: &[usize],
    j: usize,
    x: &[u32],
    prefix: &[(usize, bool)],
    alpha: f64,
) -> f64 {
    let rc = recount(data, order, j, x, prefix);
    let pm = marginal(&rc, alpha);
    let mut joint = pm;
    for a in 0..2 {
        for f in &rc.feature {
            joint[a] *= ratio(f[a], rc.n_class[a]);
        }
        for (_, _, c, t) in &rc.label {
            joint[a] *= ratio(c[a], t[a]);
        }
    }
    share(joint[1], joint[0])
}

/// Extremes of the posterior over every vertex of the IDM boxes: each
/// conditional term sits independently at its lower or upper end.
pub fn vertex_bounds(
    data: &DiscretizedDataset,
    order: &[usize],
    j: usize,
    x: &[u32],
    prefix: &[(usize, bool)],
    s: f64,
    alpha: f64,
) -> (f64, f64) {
    let rc = recount(data, order, j, x, prefix);
    let pm = marginal(&rc, alpha);
    // (count, total) per class for every term
    let mut terms: Vec<[(f64, f64); 2]> = rc
        .feature
        .iter()
        .map(|f| [(f[0], rc.n_class[0]), (f[1], rc.n_class[1])])
        .collect();
    terms.extend(
        rc.label
            .iter()
            .map(|(_, _, c, t)| [(c[0], t[0]), (c[1], t[1])]),
    );
    let bits = 2 * terms.len();
    assert!(bits <= 16, "vertex oracle is exponential");
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for mask in 0u32..(1 << bits) {
        let mut joint = pm;
        for (t, term) in terms.iter().enumerate() {
            for a in 0..2 {
                let (c, tot) = term[a];
                let upper_end = mask >> (2 * t + a) & 1 == 1;
                joint[a] *= ratio(if upper_end { c + s } else { c }, tot + s);
            }
        }
        let v = share(joint[1], joint[0]);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    (lo, hi)
}

/// Relevance probability at position `j` after summing the naive Bayes
/// joint over every assignment of the `abstained` positions.
pub fn total_probability(
    data: &DiscretizedDataset,
    order: &[usize],
    j: usize,
    x: &[u32],
    determined: &[(usize, bool)],
    abstained: &[usize],
    alpha: f64,
) -> f64 {
    let mut sum = [0.0; 2];
    for mask in 0u32..(1 << abstained.len()) {
        let mut prefix = determined.to_vec();
        prefix.extend(
            abstained
                .iter()
                .enumerate()
                .map(|(i, &k)| (k, mask >> i & 1 == 1)),
        );
        let rc = recount(data, order, j, x, &prefix);
        let pm = marginal(&rc, alpha);
        for a in 0..2 {
            let mut v = pm[a];
            for f in &rc.feature {
                v *= ratio(f[a], rc.n_class[a]);
            }
            for (_, _, c, t) in &rc.label {
                v *= ratio(c[a], t[a]);
            }
            sum[a] += v;
        }
    }
    share(sum[1], sum[0])
}

/// Every pairwise total at position `j` is positive in both classes.
pub fn pairwise_totals_positive(data: &DiscretizedDataset, order: &[usize], j: usize) -> bool {
    (0..j).all(|k| {
        let mut t = [0usize; 2];
        for row in &data.labels {
            if let (Some(c), Some(_)) = (row[order[j]], row[order[k]]) {
                t[c as usize] += 1;
            }
        }
        t[0] > 0 && t[1] > 0
    })
}

/// Random split of positions `0..j` into determined (with values) and abstained.
pub fn random_partition(
    rng: &mut impl Rng,
    j: usize,
    p_abstain: f64,
) -> (Vec<(usize, bool)>, Vec<usize>) {
    let (mut det, mut abs) = (Vec::new(), Vec::new());
    for k in 0..j {
        if rng.gen_bool(p_abstain) {
            abs.push(k);
        } else {
            det.push((k, rng.gen_bool(0.5)));
        }
    }
    (det, abs)
}
