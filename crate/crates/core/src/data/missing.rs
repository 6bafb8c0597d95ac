use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::DiscretizedDataset;
use crate::error::{Error, Result};

/// Removes exactly `floor(pct * N * m / 100)` label cells, drawn uniformly
/// without replacement from all `N * m` cells.
pub fn inject_missing(
    data: &DiscretizedDataset,
    pct: f64,
    seed: u64,
) -> Result<DiscretizedDataset> {
    if !(0.0..=100.0).contains(&pct) {
        return Err(Error::Config(format!(
            "missing percentage {pct} outside [0, 100]"
        )));
    }
    let (n, m) = (data.n_instances(), data.n_labels());
    let cells = n * m;
    let k = ((pct * cells as f64) / 100.0).floor() as usize;
    let mut out = data.clone();
    if k == 0 {
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for cell in index::sample(&mut rng, cells, k.min(cells)) {
        out.labels[cell / m][cell % m] = None;
    }
    Ok(out)
}
