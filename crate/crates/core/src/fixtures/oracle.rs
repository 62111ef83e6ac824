//! Literal reference for the selection pipeline.
//!
//! Deliberately shares nothing with [`crate::selector`] or
//! [`crate::ensemble`]: scores are recomputed here from the raw records with
//! plain loops, and each stage is a full sort followed by a prefix.

use std::collections::BTreeMap;

use crate::ensemble::CentroidSet;
use crate::error::{Error, Result};
use crate::selector::SelectionConfig;
use crate::store::{EmbeddingDataset, ManifestConfig, ManifestEntry, Origin, SampleRecord, SelectionManifest, Stage};

fn entropy_of(record: &SampleRecord, runs: usize) -> f64 {
    let mut total = 0.0;
    for k in 0..runs {
        let p = &record.probs[k];
        let mut s = 0.0;
        for &v in p {
            s += v as f64;
        }
        let mut h = 0.0;
        for &v in p {
            let q = v as f64 / s;
            if q > 0.0 {
                h -= q * q.ln();
            }
        }
        total += h;
    }
    total / runs as f64
}

fn unit_channels(t: &[f32], channels: usize, positions: usize, p: usize) -> Vec<f64> {
    let v: Vec<f64> = (0..channels).map(|c| t[c * positions + p] as f64).collect();
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm == 0.0 {
        v
    } else {
        v.iter().map(|x| x / norm).collect()
    }
}

fn distance_of(record: &SampleRecord, centroid: &[Vec<f32>], set: &CentroidSet, runs: usize) -> f64 {
    let mut total = 0.0;
    for k in 0..runs {
        for (l, shape) in set.layers.iter().enumerate() {
            let channels = shape.channels as usize;
            let positions = shape.positions();
            let mut layer = 0.0;
            for p in 0..positions {
                let x = unit_channels(&record.activations[k][l], channels, positions, p);
                let c = unit_channels(&centroid[l], channels, positions, p);
                for i in 0..channels {
                    layer += (x[i] - c[i]) * (x[i] - c[i]);
                }
            }
            total += layer / positions as f64;
        }
    }
    total / runs as f64
}

fn round_to(x: f64, decimals: Option<u32>) -> f64 {
    match decimals {
        None => x,
        Some(d) => {
            let scale = 10f64.powi(d as i32);
            (x * scale).round() / scale
        }
    }
}

fn by_score_then_id(list: &mut [(f64, String)]) {
    list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
}

/// Reference implementation of the two-stage selection with the same
/// contract and output layout as [`crate::selector::run_selection`].
pub fn oracle_select(
    real: &EmbeddingDataset,
    synthetic: &EmbeddingDataset,
    centroids: &CentroidSet,
    config: &SelectionConfig,
) -> Result<SelectionManifest> {
    if config.ratio < 0.0 || config.oversample_factor < 2 {
        return Err(Error::Config("invalid selection config".into()));
    }
    let runs = config.mc_runs_used.unwrap_or(synthetic.header.mc_runs);
    if runs == 0 || runs > synthetic.header.mc_runs {
        return Err(Error::Config(format!("cannot use {runs} MC runs")));
    }

    let mut targets = BTreeMap::new();
    for class in 0..real.header.num_classes {
        let n = real
            .records
            .iter()
            .filter(|r| r.origin == Origin::Real && r.class_label == class)
            .count();
        targets.insert(class, (config.ratio * n as f64 + 1e-9).floor() as usize);
    }

    let mut entries = Vec::new();
    for (&class, &target) in &targets {
        if target == 0 {
            continue;
        }
        let mut pool: Vec<&SampleRecord> = synthetic
            .records
            .iter()
            .filter(|r| r.origin == Origin::Synthetic && r.class_label == class)
            .collect();
        let need = config.oversample_factor as usize * target;
        if pool.len() < need {
            return Err(Error::InsufficientPool {
                class,
                available: pool.len(),
                required: need,
            });
        }
        let centroid = match centroids.centroids.iter().find(|c| c.class_label == class) {
            Some(c) => &c.layers,
            None => return Err(Error::MissingCentroid(class)),
        };
        pool.sort_by(|a, b| a.sample_id.cmp(&b.sample_id));
        pool.truncate(need);

        let mut entropy: BTreeMap<&str, f64> = BTreeMap::new();
        let mut ranked = Vec::new();
        for r in &pool {
            let e = round_to(entropy_of(r, runs as usize), config.score_decimals);
            entropy.insert(&r.sample_id, e);
            ranked.push((e, r.sample_id.clone()));
        }
        by_score_then_id(&mut ranked);
        let survivors: Vec<String> = ranked.into_iter().take(2 * target).map(|x| x.1).collect();

        let mut distance: BTreeMap<&str, f64> = BTreeMap::new();
        let mut ranked = Vec::new();
        for r in &pool {
            if survivors.contains(&r.sample_id) {
                let d = round_to(distance_of(r, centroid, centroids, runs as usize), config.score_decimals);
                distance.insert(&r.sample_id, d);
                ranked.push((d, r.sample_id.clone()));
            }
        }
        by_score_then_id(&mut ranked);
        let chosen: Vec<String> = ranked.into_iter().take(target).map(|x| x.1).collect();

        for r in &pool {
            let id = r.sample_id.as_str();
            let stage = if chosen.iter().any(|c| c == id) {
                Stage::Selected
            } else if distance.contains_key(id) {
                Stage::RejectedDistance
            } else {
                Stage::RejectedEntropy
            };
            entries.push(ManifestEntry {
                sample_id: r.sample_id.clone(),
                class_label: class,
                entropy_score: entropy[id],
                distance_score: distance.get(id).copied(),
                stage,
            });
        }
    }

    Ok(SelectionManifest {
        config: ManifestConfig {
            ratio: config.ratio,
            oversample_factor: config.oversample_factor,
            mc_runs: runs,
            seed: config.seed,
            score_decimals: config.score_decimals,
            targets,
        },
        entries,
    })
}
