use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ssaug::ensemble::{compute_centroids, feature_distance, predictive_entropy, score_entropy, ClassCentroid};
use ssaug::fixtures::sample_gaussian;
use ssaug::store::{LayerShape, Origin, SampleRecord};

fn random_distribution(c: usize, rng: &mut ChaCha8Rng) -> Vec<f32> {
    // mix of peaked and flat vectors, occasionally with exact zeros
    let sharp = rng.random_range(0.2..6.0);
    let raw: Vec<f64> = (0..c)
        .map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random::<f64>().powf(sharp) })
        .collect();
    let s: f64 = raw.iter().sum::<f64>().max(1e-12);
    let mut p: Vec<f64> = raw.iter().map(|v| v / s).collect();
    if s <= 1e-12 {
        p[0] = 1.0;
    }
    p.iter().map(|&v| v as f32).collect()
}

fn record(id: &str, probs: Vec<Vec<f32>>, acts: Vec<Vec<Vec<f32>>>) -> SampleRecord {
    SampleRecord {
        sample_id: id.into(),
        class_label: 0,
        origin: Origin::Synthetic,
        probs,
        activations: acts,
    }
}

/// Entropy straight from the definition, in f64 without renormalization shortcuts.
fn brute_entropy(p: &[f32]) -> f64 {
    let s: f64 = p.iter().map(|&v| v as f64).sum();
    p.iter()
        .map(|&v| v as f64 / s)
        .map(|q| if q == 0.0 { 0.0 } else { -q * q.ln() })
        .sum()
}

#[test]
fn entropy_bounds_and_jensen_gap_on_thousand_records() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    for i in 0..1000 {
        let c = rng.random_range(2..=10);
        let k = rng.random_range(1..=5);
        let probs: Vec<Vec<f32>> = (0..k).map(|_| random_distribution(c, &mut rng)).collect();
        let r = record(&format!("r{i}"), probs.clone(), vec![vec![vec![0.0]]; k]);
        let score = score_entropy(&r).unwrap();
        let ln_c = (c as f64).ln();
        for &h in &score.per_run {
            assert!((0.0..=ln_c).contains(&h));
        }
        let mean = score.per_run.iter().sum::<f64>() / k as f64;
        assert!((score.mean_entropy - mean).abs() < 1e-9);

        let avg: Vec<f64> = (0..c)
            .map(|j| probs.iter().map(|p| p[j] as f64).sum::<f64>() / k as f64)
            .collect();
        let s: f64 = avg.iter().sum();
        let avg: Vec<f64> = avg.iter().map(|v| v / s).collect();
        let entropy_of_mean = predictive_entropy(&avg).unwrap();
        assert!(entropy_of_mean >= score.mean_entropy - 1e-9, "record {i}");
    }
}

#[test]
fn five_run_mean_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    for _ in 0..50 {
        let probs: Vec<Vec<f32>> = (0..5).map(|_| random_distribution(6, &mut rng)).collect();
        let r = record("x", probs.clone(), vec![vec![vec![0.0]]; 5]);
        let want = probs.iter().map(|p| brute_entropy(p)).sum::<f64>() / 5.0;
        assert!((score_entropy(&r).unwrap().mean_entropy - want).abs() < 1e-12);
    }
}

#[test]
fn equality_cases_exact() {
    for c in 2..12 {
        let mut one_hot = vec![0.0; c];
        one_hot[c / 2] = 1.0;
        assert_eq!(predictive_entropy(&one_hot).unwrap(), 0.0);
        let uniform = vec![1.0 / c as f64; c];
        assert!(((predictive_entropy(&uniform).unwrap()) - (c as f64).ln()).abs() < 1e-12);
    }
}

#[test]
fn centroid_of_fifty_draws_near_generating_mean() {
    let mean = [2.0, -1.0, 0.0, 4.0];
    let sigma = 1.0;
    let xs = sample_gaussian(&mean, sigma, 50, 31);
    let records: Vec<SampleRecord> = xs
        .iter()
        .enumerate()
        .map(|(i, x)| record(&format!("r{i}"), vec![vec![0.5, 0.5]], vec![vec![x.iter().map(|&v| v as f32).collect()]]))
        .collect();
    let refs: Vec<&SampleRecord> = records.iter().collect();
    let c = compute_centroids(&BTreeMap::from([(0u16, refs)]), &[LayerShape::vector(4).unwrap()], 1).unwrap();
    let bound = 3.0 * sigma / 50f64.sqrt();
    for (got, want) in c[0].layers[0].iter().zip(mean) {
        assert!((*got as f64 - want).abs() < bound);
    }
}

#[test]
fn centroids_permutation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let shapes = [LayerShape::vector(3).unwrap(), LayerShape::new(2, 2, 1).unwrap()];
    let records: Vec<SampleRecord> = (0..40)
        .map(|i| {
            let acts = shapes
                .iter()
                .map(|s| (0..s.len()).map(|_| rng.random_range(-100.0f32..100.0)).collect())
                .collect();
            record(&format!("r{i}"), vec![vec![0.5, 0.5]], vec![acts])
        })
        .collect();
    let mut refs: Vec<&SampleRecord> = records.iter().collect();
    let a = compute_centroids(&BTreeMap::from([(0u16, refs.clone())]), &shapes, 1).unwrap();
    let again = compute_centroids(&BTreeMap::from([(0u16, refs.clone())]), &shapes, 1).unwrap();
    assert_eq!(a, again);
    refs.shuffle(&mut rng);
    let b = compute_centroids(&BTreeMap::from([(0u16, refs)]), &shapes, 1).unwrap();
    for (x, y) in a[0].layers.iter().flatten().zip(b[0].layers.iter().flatten()) {
        assert!((x - y).abs() <= 1e-6 * x.abs().max(1.0));
    }
}

fn shapes_strategy() -> impl Strategy<Value = Vec<LayerShape>> {
    prop::collection::vec((1u32..5, 1u32..4, 1u32..4), 1..4)
        .prop_map(|v| v.into_iter().map(|(c, h, w)| LayerShape::new(c, h, w).unwrap()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn distance_scale_invariant_and_bounded(shapes in shapes_strategy(), seed in any::<u64>(), k in 1usize..4, scale in 0.01f32..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tensor = |s: &LayerShape, rng: &mut ChaCha8Rng| -> Vec<f32> {
            (0..s.len()).map(|_| if rng.random_bool(0.1) { 0.0 } else { rng.random_range(-3.0f32..3.0) }).collect()
        };
        let acts: Vec<Vec<Vec<f32>>> = (0..k).map(|_| shapes.iter().map(|s| tensor(s, &mut rng)).collect()).collect();
        let centroid = ClassCentroid {
            class_label: 0,
            layers: shapes.iter().map(|s| tensor(s, &mut rng)).collect(),
            source_count: 1,
        };
        let base = record("x", vec![vec![0.5, 0.5]; k], acts.clone());
        let d = feature_distance(&base, &centroid, &shapes).unwrap();
        let limit = 4.0 * shapes.len() as f64;
        for &v in &d.per_run {
            prop_assert!(v >= 0.0 && v <= limit + 1e-9);
        }

        let mut scaled = acts;
        let layer = rng.random_range(0..shapes.len());
        for run in &mut scaled {
            run[layer].iter_mut().for_each(|v| *v *= scale);
        }
        let d2 = feature_distance(&record("x", vec![vec![0.5, 0.5]; k], scaled), &centroid, &shapes).unwrap();
        prop_assert!((d.mean_distance - d2.mean_distance).abs() < 1e-5);
    }
}
