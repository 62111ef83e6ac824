//! The whole pipeline on a fixture: centroids from real samples, two-stage
//! selection of synthetic samples, and a merged training list.

use ssaug::ensemble::{compute_dataset_centroids, CentroidSet};
use ssaug::fixtures::{gen_fixture, FixtureSpec};
use ssaug::selector::{merge_manifest, run_selection, SelectionConfig};
use ssaug::store::{write_train_list, Origin, Stage, TrainEntry};

fn main() -> ssaug::Result<()> {
    let fx = gen_fixture(&FixtureSpec::separable_two_class(7))?;
    let ds = &fx.dataset;
    let centroids = CentroidSet {
        layers: ds.header.layers.clone(),
        run_index: 1,
        centroids: compute_dataset_centroids(ds, 1)?,
    };
    let manifest = run_selection(ds, ds, &centroids, &SelectionConfig::default())?;

    for (class, target) in &manifest.config.targets {
        let pool: Vec<_> = manifest.entries.iter().filter(|e| e.class_label == *class).collect();
        let count = |stage| pool.iter().filter(|e| e.stage == stage).count();
        let mislabeled_kept = pool
            .iter()
            .filter(|e| e.stage == Stage::Selected && fx.true_class[&e.sample_id] != *class)
            .count();
        println!(
            "class {class}: pool {}, entropy-rejected {}, distance-rejected {}, selected {} (target {target}), mislabeled selected {mislabeled_kept}",
            pool.len(),
            count(Stage::RejectedEntropy),
            count(Stage::RejectedDistance),
            count(Stage::Selected),
        );
    }

    let train: Vec<TrainEntry> = ds
        .iter_origin(Origin::Real)
        .map(|r| TrainEntry {
            sample_id: r.sample_id.clone(),
            class_label: r.class_label,
        })
        .collect();
    let merged = merge_manifest(&train, &manifest)?;
    println!("training list: {} real + {} synthetic", train.len(), merged.len() - train.len());
    let mut out = Vec::new();
    write_train_list(&merged[merged.len() - 3..], &mut out)?;
    print!("last lines:\n{}", String::from_utf8_lossy(&out));
    Ok(())
}
