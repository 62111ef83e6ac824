use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::store::{partition_by_origin_and_class, EmbeddingDataset, LayerShape, Origin, SampleRecord};

/// Per-layer mean activation of the real samples of one class.
///
/// Values are kept as `f32`, the precision they are stored with, so a
/// centroid computed in memory and one read back from disk are identical.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassCentroid {
    pub class_label: u16,
    pub layers: Vec<Vec<f32>>,
    pub source_count: usize,
}

/// Averages the raw activations of MC run `run_index` (1-based) over every
/// record of each class. Summation is sequential in record order.
pub fn compute_centroids(
    real_records: &BTreeMap<u16, Vec<&SampleRecord>>,
    shapes: &[LayerShape],
    run_index: usize,
) -> Result<Vec<ClassCentroid>> {
    let mut out = Vec::with_capacity(real_records.len());
    for (&class_label, records) in real_records {
        if records.is_empty() {
            return Err(Error::EmptyClass(class_label));
        }
        let mut sums: Vec<Vec<f64>> = shapes.iter().map(|s| vec![0.0; s.len()]).collect();
        for r in records {
            if run_index == 0 || run_index > r.runs() {
                return Err(Error::RunIndex {
                    index: run_index,
                    runs: r.runs(),
                });
            }
            let run = &r.activations[run_index - 1];
            if run.len() != shapes.len() {
                return Err(Error::ShapeMismatch(format!(
                    "{}: {} layers, expected {}",
                    r.sample_id,
                    run.len(),
                    shapes.len()
                )));
            }
            for ((acc, t), shape) in sums.iter_mut().zip(run).zip(shapes) {
                if t.len() != shape.len() {
                    return Err(Error::ShapeMismatch(format!(
                        "{}: tensor of length {} for layer {shape}",
                        r.sample_id,
                        t.len()
                    )));
                }
                for (a, &v) in acc.iter_mut().zip(t) {
                    *a += v as f64;
                }
            }
        }
        let n = records.len() as f64;
        let layers = sums
            .into_iter()
            .map(|acc| acc.into_iter().map(|s| (s / n) as f32).collect())
            .collect();
        out.push(ClassCentroid {
            class_label,
            layers,
            source_count: records.len(),
        });
    }
    Ok(out)
}

/// Centroids for every class that has real records in `dataset`.
pub fn compute_dataset_centroids(dataset: &EmbeddingDataset, run_index: usize) -> Result<Vec<ClassCentroid>> {
    let partition = partition_by_origin_and_class(dataset);
    let real: BTreeMap<u16, Vec<&SampleRecord>> = partition
        .cells
        .into_iter()
        .filter(|((origin, _), _)| *origin == Origin::Real)
        .map(|((_, class), records)| (class, records))
        .collect();
    compute_centroids(&real, &dataset.header.layers, run_index)
}
