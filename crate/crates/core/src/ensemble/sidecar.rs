//! Centroid sidecar `SSAC`, little-endian, same float rules as the dump:
//!
//! ```text
//! magic "SSAC" | version u16 | layer_count u16 | run_index u16 | centroid_count u16
//! per layer:    channels u32 | height u32 | width u32
//! per centroid: class_label u16 | source_count u64 | L tensors as f32
//! ```

use std::io::{self, Read, Write};

use super::centroid::ClassCentroid;
use crate::error::{Error, Result};
use crate::store::{LayerShape, FORMAT_VERSION};

pub const CENTROID_MAGIC: [u8; 4] = *b"SSAC";

/// Frozen centroids plus the layer layout and MC run they came from.
#[derive(Debug, Clone, PartialEq)]
pub struct CentroidSet {
    pub layers: Vec<LayerShape>,
    pub run_index: u16,
    pub centroids: Vec<ClassCentroid>,
}

impl CentroidSet {
    pub fn get(&self, class: u16) -> Option<&ClassCentroid> {
        self.centroids.iter().find(|c| c.class_label == class)
    }

    fn validate(&self) -> Result<()> {
        for (i, c) in self.centroids.iter().enumerate() {
            if c.source_count == 0 {
                return Err(Error::EmptyClass(c.class_label));
            }
            if self.centroids[..i].iter().any(|o| o.class_label == c.class_label) {
                return Err(Error::Parse(format!("duplicate centroid for class {}", c.class_label)));
            }
            if c.layers.len() != self.layers.len()
                || c.layers.iter().zip(&self.layers).any(|(t, s)| t.len() != s.len())
            {
                return Err(Error::ShapeMismatch(format!(
                    "centroid of class {} does not match the layer layout",
                    c.class_label
                )));
            }
        }
        Ok(())
    }
}

pub fn write_centroids<W: Write>(set: &CentroidSet, mut out: W) -> Result<()> {
    set.validate()?;
    let mut buf = Vec::new();
    buf.extend_from_slice(&CENTROID_MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(set.layers.len() as u16).to_le_bytes());
    buf.extend_from_slice(&set.run_index.to_le_bytes());
    buf.extend_from_slice(&(set.centroids.len() as u16).to_le_bytes());
    for l in &set.layers {
        for d in [l.channels, l.height, l.width] {
            buf.extend_from_slice(&d.to_le_bytes());
        }
    }
    for c in &set.centroids {
        buf.extend_from_slice(&c.class_label.to_le_bytes());
        buf.extend_from_slice(&(c.source_count as u64).to_le_bytes());
        for t in &c.layers {
            for v in t {
                buf.extend_from_slice(&v.to_le_bytes());
            }
        }
    }
    out.write_all(&buf)?;
    out.flush()?;
    Ok(())
}

fn fill<R: Read>(src: &mut R, buf: &mut [u8]) -> Result<()> {
    src.read_exact(buf).map_err(|e| match e.kind() {
        io::ErrorKind::UnexpectedEof => Error::Parse("truncated centroid file".into()),
        _ => e.into(),
    })
}

pub fn read_centroids<R: Read>(mut src: R) -> Result<CentroidSet> {
    let mut head = [0u8; 12];
    fill(&mut src, &mut head[..4]).map_err(|_| Error::BadCentroidMagic { found: [0; 4] })?;
    let magic = [head[0], head[1], head[2], head[3]];
    if magic != CENTROID_MAGIC {
        return Err(Error::BadCentroidMagic { found: magic });
    }
    fill(&mut src, &mut head[4..])?;
    let word = |i: usize| u16::from_le_bytes([head[i], head[i + 1]]);
    let version = word(4);
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let (layer_count, run_index, count) = (word(6), word(8), word(10));
    let mut layers = Vec::with_capacity(layer_count as usize);
    for _ in 0..layer_count {
        let mut b = [0u8; 12];
        fill(&mut src, &mut b)?;
        let d = |i: usize| u32::from_le_bytes([b[i], b[i + 1], b[i + 2], b[i + 3]]);
        layers.push(LayerShape::new(d(0), d(4), d(8))?);
    }
    let mut centroids = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let mut meta = [0u8; 10];
        fill(&mut src, &mut meta)?;
        let class_label = u16::from_le_bytes([meta[0], meta[1]]);
        let mut n = [0u8; 8];
        n.copy_from_slice(&meta[2..]);
        let source_count = u64::from_le_bytes(n) as usize;
        let mut tensors = Vec::with_capacity(layers.len());
        for shape in &layers {
            let mut bytes = vec![0u8; shape.len() * 4];
            fill(&mut src, &mut bytes)?;
            tensors.push(
                bytes
                    .chunks_exact(4)
                    .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
                    .collect(),
            );
        }
        centroids.push(ClassCentroid {
            class_label,
            layers: tensors,
            source_count,
        });
    }
    let mut probe = [0u8; 1];
    if src.read(&mut probe)? != 0 {
        return Err(Error::Parse("trailing bytes in centroid file".into()));
    }
    let set = CentroidSet {
        layers,
        run_index,
        centroids,
    };
    set.validate()?;
    Ok(set)
}
