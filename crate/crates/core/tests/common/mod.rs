#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssaug::ensemble::{compute_dataset_centroids, CentroidSet};
use ssaug::fixtures::{Covariance, FixtureSpec};
use ssaug::store::{EmbeddingDataset, LayerShape};

/// A small random fixture whose synthetic pools always satisfy the
/// `oversample * floor(r * N_i)` precondition, sometimes with a few spare
/// records so truncation is exercised. At most 200 records.
pub fn random_spec(seed: u64, ratio: f64) -> FixtureSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_f1c7);
    let classes = rng.random_range(2..=4usize);
    let layers = if rng.random_bool(0.5) {
        vec![LayerShape::vector(rng.random_range(3..=6)).unwrap()]
    } else {
        vec![LayerShape::vector(3).unwrap(), LayerShape::new(2, 2, 2).unwrap()]
    };
    let dim: usize = layers.iter().map(LayerShape::len).sum();
    let real: Vec<usize> = (0..classes).map(|_| rng.random_range(0..=8)).collect();
    let synthetic = real
        .iter()
        .map(|&n| 4 * (ratio * n as f64 + 1e-9).floor() as usize + rng.random_range(0..=3))
        .collect();
    FixtureSpec {
        num_classes: classes as u16,
        layers,
        class_means: (0..classes)
            .map(|_| (0..dim).map(|_| rng.random_range(-3.0..3.0)).collect())
            .collect(),
        covariance: Covariance::Isotropic((0..classes).map(|_| rng.random_range(0.5..2.0)).collect()),
        real_per_class: real,
        synthetic_per_class: synthetic,
        mislabel_fraction: rng.random_range(0.0..0.5),
        mc_runs: rng.random_range(1..=5),
        mc_jitter: rng.random_range(0.0..0.5),
        temperature: rng.random_range(1.0..10.0),
        seed,
    }
}

pub fn centroids_for(ds: &EmbeddingDataset) -> CentroidSet {
    CentroidSet {
        layers: ds.header.layers.clone(),
        run_index: 1,
        centroids: compute_dataset_centroids(ds, 1).unwrap(),
    }
}

/// Raw FID series with a lone outlier dip at t = 5 inside a plateau of 60
/// and a sustained basin of 25 over t = 12..=15 (epochs are t = 1..=20).
pub fn outlier_dip_curve() -> Vec<(u32, f64)> {
    (1..=20u32)
        .map(|t| {
            let v = match t {
                5 => 20.0,
                12..=15 => 25.0,
                16.. => 50.0,
                _ => 60.0,
            };
            (t, v)
        })
        .collect()
}

/// Textbook recurrence, written out independently of the library.
pub fn ema_reference(raw: &[f64], alpha: f64) -> Vec<f64> {
    let mut out = vec![raw[0]];
    for t in 1..raw.len() {
        out.push(alpha * out[t - 1] + (1.0 - alpha) * raw[t]);
    }
    out
}

pub fn argmin_first(v: &[f64]) -> usize {
    let mut best = 0;
    for i in 0..v.len() {
        if v[i] < v[best] {
            best = i;
        }
    }
    best
}
