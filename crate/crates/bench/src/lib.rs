//! Synthetic inputs for the inference benchmarks.

use credal_chain::DiscretizedDataset;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` rows, `p` features with `bins` values each and `m` correlated labels.
pub fn synthetic(n: usize, p: usize, m: usize, bins: u32, seed: u64) -> DiscretizedDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut features = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let x: Vec<u32> = (0..p).map(|_| rng.gen_range(0..bins)).collect();
        let mut y = Vec::with_capacity(m);
        let mut prev = x.first().is_some_and(|&v| v >= bins / 2);
        for _ in 0..m {
            prev = if rng.gen_bool(0.75) { prev } else { !prev };
            y.push(Some(prev));
        }
        features.push(x);
        labels.push(y);
    }
    DiscretizedDataset {
        features,
        cardinalities: vec![bins as usize; p],
        labels,
        label_names: (0..m).map(|j| format!("y{j}")).collect(),
    }
}
