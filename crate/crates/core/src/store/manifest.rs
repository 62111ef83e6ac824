use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    RejectedEntropy,
    RejectedDistance,
    Selected,
}

/// One pooled synthetic sample and the outcome of the two filters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub sample_id: String,
    pub class_label: u16,
    pub entropy_score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_score: Option<f64>,
    pub stage: Stage,
}

/// Parameters echoed into the manifest so it can be checked on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestConfig {
    pub ratio: f64,
    pub oversample_factor: u32,
    pub mc_runs: u16,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score_decimals: Option<u32>,
    /// Selected count per class, `floor(ratio * N_i)`.
    pub targets: BTreeMap<u16, usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionManifest {
    pub config: ManifestConfig,
    pub entries: Vec<ManifestEntry>,
}

#[derive(Serialize, Deserialize)]
struct ConfigLine {
    config: ManifestConfig,
}

impl SelectionManifest {
    pub fn selected(&self) -> impl Iterator<Item = &ManifestEntry> {
        self.entries.iter().filter(|e| e.stage == Stage::Selected)
    }

    pub fn selected_count(&self, class: u16) -> usize {
        self.selected().filter(|e| e.class_label == class).count()
    }

    /// Checks the per-entry score/stage pairing and the per-class count
    /// contract against the echoed targets.
    pub fn validate(&self) -> Result<()> {
        for e in &self.entries {
            let has_distance = e.distance_score.is_some();
            let rejected_early = e.stage == Stage::RejectedEntropy;
            if has_distance == rejected_early {
                return Err(Error::Parse(format!(
                    "{}: distance_score must be absent exactly when stage is rejected_entropy",
                    e.sample_id
                )));
            }
        }
        let mut counts: BTreeMap<u16, usize> = BTreeMap::new();
        for e in self.selected() {
            *counts.entry(e.class_label).or_default() += 1;
        }
        for (&class, &target) in &self.config.targets {
            let got = counts.remove(&class).unwrap_or(0);
            if got != target {
                return Err(Error::Parse(format!(
                    "class {class}: {got} selected, target {target}"
                )));
            }
        }
        if let Some((class, _)) = counts.into_iter().next() {
            return Err(Error::Parse(format!("class {class} selected without a target")));
        }
        Ok(())
    }

    /// One JSON object per line: a `{"config": ...}` line, then one line per entry.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        let head = ConfigLine {
            config: self.config.clone(),
        };
        serde_json::to_writer(&mut out, &head).map_err(|e| Error::Parse(e.to_string()))?;
        out.write_all(b"\n")?;
        for e in &self.entries {
            serde_json::to_writer(&mut out, e).map_err(|e| Error::Parse(e.to_string()))?;
            out.write_all(b"\n")?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut config = None;
        let mut entries = Vec::new();
        for (n, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let parse_err = |e: serde_json::Error| Error::Parse(format!("manifest line {}: {e}", n + 1));
            if config.is_none() {
                let head: ConfigLine = serde_json::from_str(&line).map_err(parse_err)?;
                config = Some(head.config);
            } else {
                entries.push(serde_json::from_str(&line).map_err(parse_err)?);
            }
        }
        let config = config.ok_or_else(|| Error::Parse("manifest has no config line".into()))?;
        let manifest = SelectionManifest { config, entries };
        manifest.validate()?;
        Ok(manifest)
    }
}
