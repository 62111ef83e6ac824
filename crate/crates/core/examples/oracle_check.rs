//! Cross-check the parallel selector against the plain reference
//! implementation on a handful of fixtures, with and without score rounding.

use ssaug::ensemble::{compute_dataset_centroids, CentroidSet};
use ssaug::fixtures::{gen_fixture, oracle_select, FixtureSpec};
use ssaug::selector::{run_selection, SelectionConfig};

fn main() -> ssaug::Result<()> {
    for seed in 0..5 {
        let fx = gen_fixture(&FixtureSpec::separable_two_class(seed))?;
        let ds = &fx.dataset;
        let centroids = CentroidSet {
            layers: ds.header.layers.clone(),
            run_index: 1,
            centroids: compute_dataset_centroids(ds, 1)?,
        };
        for score_decimals in [None, Some(2)] {
            let cfg = SelectionConfig {
                score_decimals,
                ..Default::default()
            };
            let fast = run_selection(ds, ds, &centroids, &cfg)?;
            let slow = oracle_select(ds, ds, &centroids, &cfg)?;
            let same = fast.entries.len() == slow.entries.len()
                && fast
                    .entries
                    .iter()
                    .zip(&slow.entries)
                    .all(|(a, b)| a.sample_id == b.sample_id && a.stage == b.stage);
            println!("seed {seed}, decimals {score_decimals:?}: {}", if same { "agree" } else { "DIFFER" });
        }
    }
    Ok(())
}
