//! Plain-text training lists: one `<sample_id>\t<class_label>` per line.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainEntry {
    pub sample_id: String,
    pub class_label: u16,
}

pub fn read_train_list<R: BufRead>(input: R) -> Result<Vec<TrainEntry>> {
    let mut out = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let (id, label) = line
            .rsplit_once('\t')
            .ok_or_else(|| Error::Parse(format!("train list line {}: expected <id>\\t<label>", n + 1)))?;
        let class_label = label
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("train list line {}: bad label {label:?}", n + 1)))?;
        out.push(TrainEntry {
            sample_id: id.to_string(),
            class_label,
        });
    }
    Ok(out)
}

pub fn write_train_list<W: Write>(entries: &[TrainEntry], mut out: W) -> Result<()> {
    for e in entries {
        writeln!(out, "{}\t{}", e.sample_id, e.class_label)?;
    }
    out.flush()?;
    Ok(())
}
