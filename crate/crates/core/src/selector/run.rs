use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{stage::keep_lowest, target_counts, SelectionConfig};
use crate::ensemble::{score_entropy_runs, CentroidSet, PreparedCentroid};
use crate::error::{Error, Result};
use crate::store::{
    partition_by_origin_and_class, EmbeddingDataset, ManifestConfig, ManifestEntry, Origin, SampleRecord,
    SelectionManifest, Stage,
};

struct Scored<'a> {
    record: &'a SampleRecord,
    entropy: f64,
}

/// Runs both filters for every class and records each pooled sample's fate.
///
/// `N_i` comes from the real records of `real`; candidates are the
/// synthetic records of `synthetic`. The two may be the same dataset.
/// Classes are emitted in ascending label order, and within a class the
/// pool is listed by `sample_id`.
pub fn run_selection(
    real: &EmbeddingDataset,
    synthetic: &EmbeddingDataset,
    centroids: &CentroidSet,
    config: &SelectionConfig,
) -> Result<SelectionManifest> {
    config.validate()?;
    real.header.ensure_compatible(&synthetic.header)?;
    if centroids.layers != synthetic.header.layers {
        return Err(Error::ShapeMismatch("centroid layers differ from the synthetic dump".into()));
    }
    let available = synthetic.header.mc_runs;
    let runs = config.mc_runs_used.unwrap_or(available);
    if runs > available {
        return Err(Error::Config(format!(
            "mc_runs_used {runs} exceeds the {available} runs in the synthetic dump"
        )));
    }

    let real_counts = partition_by_origin_and_class(real).real_counts;
    let targets = target_counts(&real_counts, config.ratio);
    let factor = config.oversample_factor as usize;

    let synth = partition_by_origin_and_class(synthetic);
    let mut work = Vec::new();
    for (&class, &target) in &targets {
        if target == 0 {
            continue;
        }
        let mut pool: Vec<&SampleRecord> = synth.cell(Origin::Synthetic, class).to_vec();
        let required = factor * target;
        if pool.len() < required {
            return Err(Error::InsufficientPool {
                class,
                available: pool.len(),
                required,
            });
        }
        let centroid = centroids.get(class).ok_or(Error::MissingCentroid(class))?;
        let prepared = PreparedCentroid::new(centroid, &centroids.layers)?;
        pool.sort_unstable_by(|a, b| a.sample_id.cmp(&b.sample_id));
        pool.truncate(required);
        work.push((class, target, pool, prepared));
    }

    let mut entries = Vec::new();
    for (class, target, pool, centroid) in work {
        let scored: Vec<Scored> = pool
            .par_iter()
            .map(|r| {
                let e = score_entropy_runs(r, runs as usize)?;
                Ok(Scored {
                    record: r,
                    entropy: config.quantize(e.mean_entropy),
                })
            })
            .collect::<Result<_>>()?;

        let kept = keep_lowest(&scored, 2 * target, |s| (s.entropy, s.record.sample_id.as_str()))?;
        let distances: Vec<(&Scored, f64)> = kept
            .par_iter()
            .map(|s| {
                let d = centroid.distance(s.record, runs as usize)?;
                Ok((*s, config.quantize(d.mean_distance)))
            })
            .collect::<Result<_>>()?;
        let selected = keep_lowest(&distances, target, |(s, d)| (*d, s.record.sample_id.as_str()))?;

        let mut outcome: HashMap<&str, (Option<f64>, Stage)> =
            distances.iter().map(|(s, d)| (s.record.sample_id.as_str(), (Some(*d), Stage::RejectedDistance))).collect();
        for (s, _) in selected {
            if let Some(o) = outcome.get_mut(s.record.sample_id.as_str()) {
                o.1 = Stage::Selected;
            }
        }
        for s in &scored {
            let (distance_score, stage) = outcome
                .get(s.record.sample_id.as_str())
                .copied()
                .unwrap_or((None, Stage::RejectedEntropy));
            entries.push(ManifestEntry {
                sample_id: s.record.sample_id.clone(),
                class_label: class,
                entropy_score: s.entropy,
                distance_score,
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
            targets: targets.into_iter().collect::<BTreeMap<_, _>>(),
        },
        entries,
    })
}
