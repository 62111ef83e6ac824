use std::collections::BTreeMap;

use super::{EmbeddingDataset, Origin, SampleRecord};

/// Records grouped by `(origin, class_label)`, with per-class counts.
///
/// `real_counts[i]` is `N_i`; it lists every class in `[0, C)` so that a
/// class with no real records shows up with a zero count.
#[derive(Debug, Clone)]
pub struct Partition<'a> {
    pub cells: BTreeMap<(Origin, u16), Vec<&'a SampleRecord>>,
    pub real_counts: BTreeMap<u16, usize>,
    pub synthetic_counts: BTreeMap<u16, usize>,
    /// Classes that have synthetic records but `N_i = 0`.
    pub classes_without_real: Vec<u16>,
}

impl<'a> Partition<'a> {
    /// `N`, the total number of real records.
    pub fn real_total(&self) -> usize {
        self.real_counts.values().sum()
    }

    pub fn cell(&self, origin: Origin, class: u16) -> &[&'a SampleRecord] {
        self.cells.get(&(origin, class)).map_or(&[], Vec::as_slice)
    }

    pub fn total(&self) -> usize {
        self.cells.values().map(Vec::len).sum()
    }
}

pub fn partition_by_origin_and_class(dataset: &EmbeddingDataset) -> Partition<'_> {
    let mut cells: BTreeMap<(Origin, u16), Vec<&SampleRecord>> = BTreeMap::new();
    for r in &dataset.records {
        cells.entry((r.origin, r.class_label)).or_default().push(r);
    }
    let mut real_counts: BTreeMap<u16, usize> = (0..dataset.header.num_classes).map(|c| (c, 0)).collect();
    let mut synthetic_counts = BTreeMap::new();
    for (&(origin, class), records) in &cells {
        match origin {
            Origin::Real => {
                real_counts.insert(class, records.len());
            }
            Origin::Synthetic => {
                synthetic_counts.insert(class, records.len());
            }
        }
    }
    let classes_without_real = synthetic_counts
        .keys()
        .copied()
        .filter(|c| real_counts.get(c).copied().unwrap_or(0) == 0)
        .collect();
    Partition {
        cells,
        real_counts,
        synthetic_counts,
        classes_without_real,
    }
}
