//! Two-stage selection of synthetic samples.
//!
//! For each class `i` with `N_i` real samples and target `t_i = floor(r N_i)`
//! the synthetic pool is cut to `oversample_factor * t_i` records (lowest
//! `sample_id` first). The `2 t_i` lowest-entropy records survive the first
//! stage; of those the `t_i` closest to the class centroid are selected.
//! With the default factor of 4 each stage keeps exactly half.
//!
//! Ranking is by `(score, sample_id)`, so ties never change the counts.

mod merge;
mod run;
mod stage;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use merge::merge_manifest;
pub use run::run_selection;
pub use stage::{distance_stage, entropy_stage, keep_lowest};

pub const DEFAULT_RATIO: f64 = 0.5;
pub const DEFAULT_OVERSAMPLE: u32 = 4;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelectionConfig {
    /// Augmentation ratio `r`: selected synthetic over real samples.
    pub ratio: f64,
    pub oversample_factor: u32,
    /// Leading MC runs used for scoring; `None` uses all runs in the dump.
    pub mc_runs_used: Option<u16>,
    /// Echoed into the manifest; selection itself is deterministic.
    pub seed: u64,
    /// Round both scores to this many decimals before ranking.
    pub score_decimals: Option<u32>,
}

impl Default for SelectionConfig {
    fn default() -> Self {
        SelectionConfig {
            ratio: DEFAULT_RATIO,
            oversample_factor: DEFAULT_OVERSAMPLE,
            mc_runs_used: None,
            seed: 0,
            score_decimals: None,
        }
    }
}

impl SelectionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.ratio.is_finite() && self.ratio >= 0.0) {
            return Err(Error::Config(format!("ratio must be >= 0, got {}", self.ratio)));
        }
        if self.oversample_factor < 2 {
            return Err(Error::Config(format!(
                "oversample_factor must be >= 2, got {}",
                self.oversample_factor
            )));
        }
        if self.mc_runs_used == Some(0) {
            return Err(Error::Config("mc_runs_used must be >= 1".into()));
        }
        Ok(())
    }

    pub(crate) fn quantize(&self, score: f64) -> f64 {
        match self.score_decimals {
            Some(d) => {
                let scale = 10f64.powi(d as i32);
                (score * scale).round() / scale
            }
            None => score,
        }
    }
}

/// `floor(r * N_i)` per class. A 1e-9 slack keeps products such as
/// `0.29 * 100 = 28.999999999999996` from losing a sample to rounding.
pub fn target_counts(real_class_counts: &BTreeMap<u16, usize>, ratio: f64) -> BTreeMap<u16, usize> {
    real_class_counts
        .iter()
        .map(|(&class, &n)| (class, (ratio * n as f64 + 1e-9).floor() as usize))
        .collect()
}
