//! Embedding dumps, selection manifests and training lists.
//!
//! An embedding dump is the only contract between a feature extractor and
//! this crate: for every sample it carries `K` MC-dropout runs of class
//! probabilities and per-layer activations. Everything downstream (FID
//! statistics, entropies, centroids, distances) is computed from it.

mod dump;
mod manifest;
mod partition;
mod trainlist;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use dump::{read_dataset, write_dataset, DatasetReader, DatasetWriter, FORMAT_VERSION, MAGIC};
pub use manifest::{ManifestConfig, ManifestEntry, SelectionManifest, Stage};
pub use partition::{partition_by_origin_and_class, Partition};
pub use trainlist::{read_train_list, write_train_list, TrainEntry};

/// Tolerance on the sum of each stored probability vector.
pub const PROB_SUM_TOLERANCE: f64 = 1e-4;

/// Shape of one exported activation layer, `channels x height x width`.
///
/// Tensors are flattened channel-major (CHW): element `(c, y, x)` sits at
/// `c * height * width + y * width + x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LayerShape {
    pub channels: u32,
    pub height: u32,
    pub width: u32,
}

impl LayerShape {
    pub fn new(channels: u32, height: u32, width: u32) -> Result<Self> {
        let shape = LayerShape {
            channels,
            height,
            width,
        };
        shape.check()?;
        Ok(shape)
    }

    /// A `channels x 1 x 1` layer, i.e. a plain feature vector.
    pub fn vector(channels: u32) -> Result<Self> {
        Self::new(channels, 1, 1)
    }

    fn check(&self) -> Result<()> {
        if self.channels == 0 || self.height == 0 || self.width == 0 {
            return Err(Error::InvalidHeader(format!(
                "layer shape {self} has a zero dimension"
            )));
        }
        Ok(())
    }

    /// Flattened element count.
    pub fn len(&self) -> usize {
        self.channels as usize * self.positions()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of spatial positions, `height * width`.
    pub fn positions(&self) -> usize {
        self.height as usize * self.width as usize
    }
}

impl fmt::Display for LayerShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.channels, self.height, self.width)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetHeader {
    pub format_version: u16,
    pub num_classes: u16,
    pub mc_runs: u16,
    pub layers: Vec<LayerShape>,
    pub sample_count: u64,
}

impl DatasetHeader {
    pub fn new(num_classes: u16, mc_runs: u16, layers: Vec<LayerShape>, sample_count: u64) -> Result<Self> {
        let header = DatasetHeader {
            format_version: FORMAT_VERSION,
            num_classes,
            mc_runs,
            layers,
            sample_count,
        };
        header.validate()?;
        Ok(header)
    }

    pub fn validate(&self) -> Result<()> {
        if self.format_version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(self.format_version));
        }
        if self.num_classes < 2 {
            return Err(Error::InvalidHeader(format!(
                "num_classes must be >= 2, got {}",
                self.num_classes
            )));
        }
        if self.mc_runs < 1 {
            return Err(Error::InvalidHeader("mc_runs must be >= 1".into()));
        }
        if self.layers.is_empty() {
            return Err(Error::InvalidHeader("at least one layer is required".into()));
        }
        if self.layers.len() > u16::MAX as usize {
            return Err(Error::InvalidHeader("too many layers".into()));
        }
        for layer in &self.layers {
            layer.check()?;
        }
        Ok(())
    }

    /// Total activation length of one run across all layers.
    pub fn feature_len(&self) -> usize {
        self.layers.iter().map(LayerShape::len).sum()
    }

    /// Checks that another dump was produced with the same extractor layout.
    pub fn ensure_compatible(&self, other: &DatasetHeader) -> Result<()> {
        if self.num_classes != other.num_classes {
            return Err(Error::ShapeMismatch(format!(
                "num_classes {} vs {}",
                self.num_classes, other.num_classes
            )));
        }
        if self.layers != other.layers {
            return Err(Error::ShapeMismatch("layer shapes differ between dumps".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Real,
    Synthetic,
}

impl Origin {
    pub fn to_byte(self) -> u8 {
        match self {
            Origin::Real => 0,
            Origin::Synthetic => 1,
        }
    }

    pub fn from_byte(b: u8) -> Option<Self> {
        match b {
            0 => Some(Origin::Real),
            1 => Some(Origin::Synthetic),
            _ => None,
        }
    }
}

/// One sample: `probs[k]` is the class distribution of MC run `k`,
/// `activations[k][l]` the flattened tensor of layer `l` in run `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleRecord {
    pub sample_id: String,
    pub class_label: u16,
    pub origin: Origin,
    pub probs: Vec<Vec<f32>>,
    pub activations: Vec<Vec<Vec<f32>>>,
}

impl SampleRecord {
    pub fn runs(&self) -> usize {
        self.probs.len()
    }

    /// Checks every record invariant against `header`. The returned message
    /// is meant to be wrapped with the record's ordinal and id.
    pub fn check(&self, header: &DatasetHeader) -> std::result::Result<(), String> {
        if self.sample_id.is_empty() {
            return Err("empty sample_id".into());
        }
        if self.sample_id.len() > u16::MAX as usize {
            return Err("sample_id longer than 65535 bytes".into());
        }
        if self.class_label >= header.num_classes {
            return Err(format!(
                "class_label {} outside [0, {})",
                self.class_label, header.num_classes
            ));
        }
        let runs = header.mc_runs as usize;
        if self.probs.len() != runs {
            return Err(format!("{} probability runs, expected {runs}", self.probs.len()));
        }
        if self.activations.len() != runs {
            return Err(format!(
                "{} activation runs, expected {runs}",
                self.activations.len()
            ));
        }
        for (k, p) in self.probs.iter().enumerate() {
            if p.len() != header.num_classes as usize {
                return Err(format!(
                    "run {}: {} probabilities, expected {}",
                    k + 1,
                    p.len(),
                    header.num_classes
                ));
            }
            let mut sum = 0.0f64;
            for &v in p {
                if !v.is_finite() || v < 0.0 {
                    return Err(format!("run {}: invalid probability {v}", k + 1));
                }
                sum += v as f64;
            }
            if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
                return Err(format!("run {}: probabilities sum to {sum:.6}", k + 1));
            }
        }
        for (k, layers) in self.activations.iter().enumerate() {
            if layers.len() != header.layers.len() {
                return Err(format!(
                    "run {}: {} layers, expected {}",
                    k + 1,
                    layers.len(),
                    header.layers.len()
                ));
            }
            for (l, (t, shape)) in layers.iter().zip(&header.layers).enumerate() {
                if t.len() != shape.len() {
                    return Err(format!(
                        "run {} layer {}: length {} does not match shape {shape}",
                        k + 1,
                        l + 1,
                        t.len()
                    ));
                }
                if t.iter().any(|v| !v.is_finite()) {
                    return Err(format!("run {} layer {}: non-finite activation", k + 1, l + 1));
                }
            }
        }
        Ok(())
    }

    /// All layers of one run concatenated in declared order, widened to f64.
    pub fn flat_features(&self, run: usize) -> Vec<f64> {
        self.activations[run]
            .iter()
            .flat_map(|t| t.iter().map(|&v| v as f64))
            .collect()
    }
}

/// A fully loaded, validated dump.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingDataset {
    pub header: DatasetHeader,
    pub records: Vec<SampleRecord>,
}

impl EmbeddingDataset {
    /// Builds and validates a dataset; `sample_count` is taken from `records`.
    pub fn new(
        num_classes: u16,
        mc_runs: u16,
        layers: Vec<LayerShape>,
        records: Vec<SampleRecord>,
    ) -> Result<Self> {
        let header = DatasetHeader::new(num_classes, mc_runs, layers, records.len() as u64)?;
        let dataset = EmbeddingDataset { header, records };
        dataset.validate()?;
        Ok(dataset)
    }

    pub fn validate(&self) -> Result<()> {
        self.header.validate()?;
        if self.header.sample_count != self.records.len() as u64 {
            return Err(Error::CountMismatch {
                declared: self.header.sample_count,
                actual: self.records.len() as u64,
            });
        }
        let mut seen = HashSet::with_capacity(self.records.len());
        for (i, r) in self.records.iter().enumerate() {
            r.check(&self.header).map_err(|reason| Error::InvalidRecord {
                ordinal: i as u64,
                sample_id: r.sample_id.clone(),
                reason,
            })?;
            if !seen.insert(r.sample_id.as_str()) {
                return Err(Error::DuplicateId(r.sample_id.clone()));
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn iter_origin(&self, origin: Origin) -> impl Iterator<Item = &SampleRecord> {
        self.records.iter().filter(move |r| r.origin == origin)
    }
}
