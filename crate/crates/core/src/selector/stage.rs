use crate::ensemble::{DistanceScore, EntropyScore};
use crate::error::{Error, Result};

/// Returns the `keep` items that come first under `(score, id)` order,
/// in that order.
pub fn keep_lowest<'a, T>(
    pool: &'a [T],
    keep: usize,
    key: impl Fn(&T) -> (f64, &str),
) -> Result<Vec<&'a T>> {
    if pool.len() < keep {
        return Err(Error::PoolTooSmall {
            pool: pool.len(),
            keep,
        });
    }
    let mut ranked: Vec<&T> = pool.iter().collect();
    ranked.sort_by(|a, b| {
        let (sa, ia) = key(a);
        let (sb, ib) = key(b);
        // + 0.0 folds -0.0 into 0.0 so signed zeros tie
        (sa + 0.0).total_cmp(&(sb + 0.0)).then_with(|| ia.cmp(ib))
    });
    ranked.truncate(keep);
    Ok(ranked)
}

/// Keeps the `keep` lowest-entropy records.
pub fn entropy_stage(pool: &[EntropyScore], keep: usize) -> Result<Vec<&EntropyScore>> {
    keep_lowest(pool, keep, |s| (s.mean_entropy, s.sample_id.as_str()))
}

/// Keeps the `keep` records closest to their class centroid.
pub fn distance_stage(survivors: &[DistanceScore], keep: usize) -> Result<Vec<&DistanceScore>> {
    keep_lowest(survivors, keep, |s| (s.mean_distance, s.sample_id.as_str()))
}
