use super::centroid::ClassCentroid;
use crate::error::{Error, Result};
use crate::store::{LayerShape, SampleRecord};

/// Divides the channel vector at every spatial position by its Euclidean
/// norm. All-zero channel vectors stay zero.
pub fn channel_unit_normalize(t: &[f32], shape: &LayerShape) -> Result<Vec<f64>> {
    if t.len() != shape.len() {
        return Err(Error::ShapeMismatch(format!(
            "tensor of length {} for layer {shape}",
            t.len()
        )));
    }
    let positions = shape.positions();
    let channels = shape.channels as usize;
    let mut out: Vec<f64> = t.iter().map(|&v| v as f64).collect();
    let mut norms = vec![0.0f64; positions];
    for c in 0..channels {
        let row = &out[c * positions..(c + 1) * positions];
        for (n, v) in norms.iter_mut().zip(row) {
            *n += v * v;
        }
    }
    norms.iter_mut().for_each(|n| *n = n.sqrt());
    for c in 0..channels {
        let row = &mut out[c * positions..(c + 1) * positions];
        for (v, &n) in row.iter_mut().zip(&norms) {
            if n > 0.0 {
                *v /= n;
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistanceScore {
    pub sample_id: String,
    pub per_run: Vec<f64>,
    pub mean_distance: f64,
}

/// A centroid with its layers already channel-normalized, reusable across
/// many samples.
#[derive(Debug, Clone)]
pub struct PreparedCentroid {
    class_label: u16,
    shapes: Vec<LayerShape>,
    layers: Vec<Vec<f64>>,
}

impl PreparedCentroid {
    pub fn new(centroid: &ClassCentroid, shapes: &[LayerShape]) -> Result<Self> {
        if centroid.layers.len() != shapes.len() {
            return Err(Error::ShapeMismatch(format!(
                "centroid of class {} has {} layers, expected {}",
                centroid.class_label,
                centroid.layers.len(),
                shapes.len()
            )));
        }
        let layers = centroid
            .layers
            .iter()
            .zip(shapes)
            .map(|(t, s)| channel_unit_normalize(t, s))
            .collect::<Result<_>>()?;
        Ok(PreparedCentroid {
            class_label: centroid.class_label,
            shapes: shapes.to_vec(),
            layers,
        })
    }

    pub fn class_label(&self) -> u16 {
        self.class_label
    }

    /// Distance of one MC run: `sum_l 1/(H_l W_l) * |phi_l(x) - phi_l(c)|^2`
    /// over normalized activations.
    fn run_distance(&self, layers: &[Vec<f32>], sample_id: &str) -> Result<f64> {
        if layers.len() != self.shapes.len() {
            return Err(Error::ShapeMismatch(format!(
                "{sample_id}: {} layers, centroid has {}",
                layers.len(),
                self.shapes.len()
            )));
        }
        let mut total = 0.0;
        for ((t, shape), c) in layers.iter().zip(&self.shapes).zip(&self.layers) {
            let x = channel_unit_normalize(t, shape)?;
            let sq: f64 = x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum();
            total += sq / shape.positions() as f64;
        }
        Ok(total)
    }

    /// Mean over the first `runs` MC runs of the per-run distance.
    pub fn distance(&self, record: &SampleRecord, runs: usize) -> Result<DistanceScore> {
        if runs == 0 || runs > record.activations.len() {
            return Err(Error::RunIndex {
                index: runs,
                runs: record.activations.len(),
            });
        }
        let per_run = record.activations[..runs]
            .iter()
            .map(|layers| self.run_distance(layers, &record.sample_id))
            .collect::<Result<Vec<_>>>()?;
        let mean_distance = per_run.iter().sum::<f64>() / runs as f64;
        Ok(DistanceScore {
            sample_id: record.sample_id.clone(),
            per_run,
            mean_distance,
        })
    }
}

/// Mean channel-normalized feature distance over all MC runs of `record`.
/// The centroid is normalized after averaging, i.e. here.
pub fn feature_distance(record: &SampleRecord, centroid: &ClassCentroid, shapes: &[LayerShape]) -> Result<DistanceScore> {
    feature_distance_runs(record, centroid, shapes, record.runs())
}

pub fn feature_distance_runs(
    record: &SampleRecord,
    centroid: &ClassCentroid,
    shapes: &[LayerShape],
    runs: usize,
) -> Result<DistanceScore> {
    PreparedCentroid::new(centroid, shapes)?.distance(record, runs)
}
