//! Shared pipeline configuration, read from a TOML file.
//!
//! Precedence is flag > config file > built-in default. Environment
//! variables are never consulted.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fid::DEFAULT_ALPHA;
use crate::selector::{DEFAULT_OVERSAMPLE, DEFAULT_RATIO};

pub const DEFAULT_MC_RUNS: u16 = 5;
pub const DEFAULT_CENTROID_RUN: u16 = 1;
pub const DEFAULT_FEATURE_RUN: u16 = 1;
/// Extractor-side dropout rate; recorded for provenance only.
pub const DEFAULT_DROPOUT_RATE: f64 = 0.5;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelinePaths {
    pub real_dump: Option<PathBuf>,
    pub synthetic_dump: Option<PathBuf>,
    pub centroids: Option<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub train_list: Option<PathBuf>,
    pub epoch_dir: Option<PathBuf>,
    pub reference: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    pub alpha: f64,
    pub ratio: f64,
    pub oversample_factor: u32,
    pub mc_runs_used: u16,
    pub centroid_run_index: u16,
    /// MC run whose activations feed FID statistics.
    pub feature_run: u16,
    pub dropout_rate: f64,
    pub seed: Option<u64>,
    pub jobs: Option<usize>,
    pub paths: PipelinePaths,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            alpha: DEFAULT_ALPHA,
            ratio: DEFAULT_RATIO,
            oversample_factor: DEFAULT_OVERSAMPLE,
            mc_runs_used: DEFAULT_MC_RUNS,
            centroid_run_index: DEFAULT_CENTROID_RUN,
            feature_run: DEFAULT_FEATURE_RUN,
            dropout_rate: DEFAULT_DROPOUT_RATE,
            seed: None,
            jobs: None,
            paths: PipelinePaths::default(),
        }
    }
}

impl PipelineConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: PipelineConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if !(self.ratio >= 0.0 && self.ratio.is_finite()) {
            return Err(Error::Config(format!("ratio must be >= 0, got {}", self.ratio)));
        }
        if self.oversample_factor < 2 {
            return Err(Error::Config("oversample_factor must be >= 2".into()));
        }
        if self.mc_runs_used == 0 || self.centroid_run_index == 0 || self.feature_run == 0 {
            return Err(Error::Config("run counts and indices are 1-based".into()));
        }
        if !(0.0..1.0).contains(&self.dropout_rate) {
            return Err(Error::Config(format!("dropout_rate {} outside [0, 1)", self.dropout_rate)));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be >= 1".into()));
        }
        Ok(())
    }
}
