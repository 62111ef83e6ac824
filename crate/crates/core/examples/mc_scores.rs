//! Per-sample MC-dropout entropy and centroid distance, contrasting correctly
//! labeled and mislabeled synthetic samples.

use ssaug::ensemble::{compute_dataset_centroids, score_entropy, PreparedCentroid};
use ssaug::fixtures::{gen_fixture, FixtureSpec};
use ssaug::store::Origin;

fn main() -> ssaug::Result<()> {
    let fx = gen_fixture(&FixtureSpec::separable_two_class(1))?;
    let ds = &fx.dataset;
    let centroids = compute_dataset_centroids(ds, 1)?;
    let prepared = centroids
        .iter()
        .map(|c| PreparedCentroid::new(c, &ds.header.layers))
        .collect::<ssaug::Result<Vec<_>>>()?;

    let mut sums = [[0.0f64; 2]; 2];
    let mut counts = [0usize; 2];
    for r in ds.iter_origin(Origin::Synthetic) {
        let entropy = score_entropy(r)?.mean_entropy;
        let centroid = prepared.iter().find(|c| c.class_label() == r.class_label).expect("centroid per class");
        let distance = centroid.distance(r, r.runs())?.mean_distance;
        let group = usize::from(fx.is_mislabeled(r));
        sums[group][0] += entropy;
        sums[group][1] += distance;
        counts[group] += 1;
    }
    for (group, name) in ["correct", "mislabeled"].iter().enumerate() {
        let n = counts[group] as f64;
        println!(
            "{name:>10}: n = {:3}, mean entropy {:.4}, mean distance {:.4}",
            counts[group],
            sums[group][0] / n,
            sums[group][1] / n
        );
    }
    Ok(())
}
