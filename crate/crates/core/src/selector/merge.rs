use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::store::{SelectionManifest, TrainEntry};

/// Appends the selected synthetic samples, in manifest order, after the
/// original training entries.
pub fn merge_manifest(train: &[TrainEntry], selection: &SelectionManifest) -> Result<Vec<TrainEntry>> {
    let mut seen: HashSet<&str> = HashSet::with_capacity(train.len());
    for e in train {
        if !seen.insert(&e.sample_id) {
            return Err(Error::IdCollision(e.sample_id.clone()));
        }
    }
    let mut out = train.to_vec();
    for e in selection.selected() {
        if !seen.insert(&e.sample_id) {
            return Err(Error::IdCollision(e.sample_id.clone()));
        }
        out.push(TrainEntry {
            sample_id: e.sample_id.clone(),
            class_label: e.class_label,
        });
    }
    Ok(out)
}
