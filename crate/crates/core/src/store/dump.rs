//! Binary `SSAE` format, little-endian throughout:
//!
//! ```text
//! magic "SSAE" | version u16 | num_classes u16 | mc_runs u16 | layer_count u16
//! per layer:  channels u32 | height u32 | width u32
//! sample_count u64
//! per record: id_len u16 | id bytes | class_label u16 | origin u8
//!             K x { C x f32 probs, then L activation tensors as f32 }
//! ```

use std::collections::HashSet;
use std::io::{self, Read, Write};

use super::{DatasetHeader, LayerShape, Origin, SampleRecord};
use crate::error::{Error, Result};

pub const MAGIC: [u8; 4] = *b"SSAE";
pub const FORMAT_VERSION: u16 = 1;

/// Writes `header` followed by `records`, validating every record first.
/// Returns the number of bytes written.
pub fn write_dataset<W: Write>(header: &DatasetHeader, records: &[SampleRecord], sink: W) -> Result<u64> {
    if header.sample_count != records.len() as u64 {
        return Err(Error::CountMismatch {
            declared: header.sample_count,
            actual: records.len() as u64,
        });
    }
    let mut writer = DatasetWriter::new(sink, header.clone())?;
    for r in records {
        writer.write_record(r)?;
    }
    writer.finish()
}

/// Reads a whole dump into memory.
pub fn read_dataset<R: Read>(source: R) -> Result<(DatasetHeader, Vec<SampleRecord>)> {
    let reader = DatasetReader::new(source)?;
    let header = reader.header().clone();
    let records = reader.collect::<Result<Vec<_>>>()?;
    Ok((header, records))
}

struct Counting<W> {
    inner: W,
    written: u64,
}

impl<W: Write> Write for Counting<W> {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        let n = self.inner.write(buf)?;
        self.written += n as u64;
        Ok(n)
    }

    fn flush(&mut self) -> io::Result<()> {
        self.inner.flush()
    }
}

/// Streaming single-writer encoder.
pub struct DatasetWriter<W: Write> {
    out: Counting<W>,
    header: DatasetHeader,
    seen: HashSet<String>,
    written: u64,
    buf: Vec<u8>,
}

impl<W: Write> DatasetWriter<W> {
    pub fn new(sink: W, header: DatasetHeader) -> Result<Self> {
        header.validate()?;
        let mut out = Counting {
            inner: sink,
            written: 0,
        };
        let mut buf = Vec::with_capacity(22 + 12 * header.layers.len());
        buf.extend_from_slice(&MAGIC);
        buf.extend_from_slice(&header.format_version.to_le_bytes());
        buf.extend_from_slice(&header.num_classes.to_le_bytes());
        buf.extend_from_slice(&header.mc_runs.to_le_bytes());
        buf.extend_from_slice(&(header.layers.len() as u16).to_le_bytes());
        for layer in &header.layers {
            buf.extend_from_slice(&layer.channels.to_le_bytes());
            buf.extend_from_slice(&layer.height.to_le_bytes());
            buf.extend_from_slice(&layer.width.to_le_bytes());
        }
        buf.extend_from_slice(&header.sample_count.to_le_bytes());
        out.write_all(&buf)?;
        Ok(DatasetWriter {
            out,
            header,
            seen: HashSet::new(),
            written: 0,
            buf,
        })
    }

    pub fn write_record(&mut self, record: &SampleRecord) -> Result<()> {
        let ordinal = self.written;
        if ordinal >= self.header.sample_count {
            return Err(Error::CountMismatch {
                declared: self.header.sample_count,
                actual: ordinal + 1,
            });
        }
        record
            .check(&self.header)
            .map_err(|reason| Error::InvalidRecord {
                ordinal,
                sample_id: record.sample_id.clone(),
                reason,
            })?;
        if !self.seen.insert(record.sample_id.clone()) {
            return Err(Error::DuplicateId(record.sample_id.clone()));
        }

        let buf = &mut self.buf;
        buf.clear();
        buf.extend_from_slice(&(record.sample_id.len() as u16).to_le_bytes());
        buf.extend_from_slice(record.sample_id.as_bytes());
        buf.extend_from_slice(&record.class_label.to_le_bytes());
        buf.push(record.origin.to_byte());
        for (probs, layers) in record.probs.iter().zip(&record.activations) {
            for v in probs {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            for t in layers {
                for v in t {
                    buf.extend_from_slice(&v.to_le_bytes());
                }
            }
        }
        self.out.write_all(buf).map_err(|source| Error::Sink {
            sample_id: record.sample_id.clone(),
            source,
        })?;
        self.written += 1;
        Ok(())
    }

    /// Flushes and returns the total byte count. Fails if fewer records
    /// were written than the header declared.
    pub fn finish(mut self) -> Result<u64> {
        if self.written != self.header.sample_count {
            return Err(Error::CountMismatch {
                declared: self.header.sample_count,
                actual: self.written,
            });
        }
        self.out.flush()?;
        Ok(self.out.written)
    }
}

/// Streaming decoder; yields records one at a time, validating each.
pub struct DatasetReader<R: Read> {
    src: R,
    header: DatasetHeader,
    next: u64,
    seen: HashSet<String>,
    done: bool,
}

fn read_exact_or<R: Read>(src: &mut R, buf: &mut [u8], on_eof: impl FnOnce() -> Error) -> Result<()> {
    match src.read_exact(buf) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => Err(on_eof()),
        Err(e) => Err(e.into()),
    }
}

fn truncated_header() -> Error {
    Error::InvalidHeader("truncated header".into())
}

impl<R: Read> DatasetReader<R> {
    pub fn new(mut src: R) -> Result<Self> {
        let mut magic = [0u8; 4];
        match src.read_exact(&mut magic) {
            Ok(()) => {}
            Err(e) if e.kind() == io::ErrorKind::UnexpectedEof => {
                return Err(Error::BadMagic { found: magic })
            }
            Err(e) => return Err(e.into()),
        }
        if magic != MAGIC {
            return Err(Error::BadMagic { found: magic });
        }
        let mut fixed = [0u8; 8];
        read_exact_or(&mut src, &mut fixed, truncated_header)?;
        let word = |i: usize| u16::from_le_bytes([fixed[i], fixed[i + 1]]);
        let (version, num_classes, mc_runs, layer_count) = (word(0), word(2), word(4), word(6));
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let mut layers = Vec::with_capacity(layer_count as usize);
        for _ in 0..layer_count {
            let mut b = [0u8; 12];
            read_exact_or(&mut src, &mut b, truncated_header)?;
            let dim = |i: usize| u32::from_le_bytes([b[i], b[i + 1], b[i + 2], b[i + 3]]);
            layers.push(LayerShape {
                channels: dim(0),
                height: dim(4),
                width: dim(8),
            });
        }
        let mut count = [0u8; 8];
        read_exact_or(&mut src, &mut count, truncated_header)?;
        let header = DatasetHeader {
            format_version: version,
            num_classes,
            mc_runs,
            layers,
            sample_count: u64::from_le_bytes(count),
        };
        header.validate()?;
        Ok(DatasetReader {
            src,
            header,
            next: 0,
            seen: HashSet::new(),
            done: false,
        })
    }

    pub fn header(&self) -> &DatasetHeader {
        &self.header
    }

    fn read_floats(&mut self, n: usize, ordinal: u64, id: &str) -> Result<Vec<f32>> {
        let mut bytes = vec![0u8; n * 4];
        read_exact_or(&mut self.src, &mut bytes, || Error::Truncated {
            ordinal,
            sample_id: Some(id.to_string()),
        })?;
        Ok(bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect())
    }

    fn read_record(&mut self) -> Result<SampleRecord> {
        let ordinal = self.next;
        let trunc = || Error::Truncated {
            ordinal,
            sample_id: None,
        };
        let mut len = [0u8; 2];
        read_exact_or(&mut self.src, &mut len, trunc)?;
        let mut id = vec![0u8; u16::from_le_bytes(len) as usize];
        read_exact_or(&mut self.src, &mut id, trunc)?;
        let sample_id = String::from_utf8(id).map_err(|_| Error::InvalidRecord {
            ordinal,
            sample_id: "<non-utf8>".into(),
            reason: "sample_id is not valid UTF-8".into(),
        })?;
        let trunc_id = || Error::Truncated {
            ordinal,
            sample_id: Some(sample_id.clone()),
        };
        let mut meta = [0u8; 3];
        read_exact_or(&mut self.src, &mut meta, trunc_id)?;
        let class_label = u16::from_le_bytes([meta[0], meta[1]]);
        let origin = Origin::from_byte(meta[2]).ok_or_else(|| Error::InvalidRecord {
            ordinal,
            sample_id: sample_id.clone(),
            reason: format!("unknown origin byte {}", meta[2]),
        })?;

        let runs = self.header.mc_runs as usize;
        let classes = self.header.num_classes as usize;
        let shapes = self.header.layers.clone();
        let mut probs = Vec::with_capacity(runs);
        let mut activations = Vec::with_capacity(runs);
        for _ in 0..runs {
            probs.push(self.read_floats(classes, ordinal, &sample_id)?);
            let mut layers = Vec::with_capacity(shapes.len());
            for shape in &shapes {
                layers.push(self.read_floats(shape.len(), ordinal, &sample_id)?);
            }
            activations.push(layers);
        }
        let record = SampleRecord {
            sample_id,
            class_label,
            origin,
            probs,
            activations,
        };
        record
            .check(&self.header)
            .map_err(|reason| Error::InvalidRecord {
                ordinal,
                sample_id: record.sample_id.clone(),
                reason,
            })?;
        if !self.seen.insert(record.sample_id.clone()) {
            return Err(Error::DuplicateId(record.sample_id));
        }
        Ok(record)
    }

    fn check_eof(&mut self) -> Result<()> {
        let mut probe = [0u8; 1];
        loop {
            match self.src.read(&mut probe) {
                Ok(0) => return Ok(()),
                Ok(_) => return Err(Error::TrailingBytes(self.header.sample_count)),
                Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
                Err(e) => return Err(e.into()),
            }
        }
    }
}

impl<R: Read> Iterator for DatasetReader<R> {
    type Item = Result<SampleRecord>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.next == self.header.sample_count {
            self.done = true;
            return match self.check_eof() {
                Ok(()) => None,
                Err(e) => Some(Err(e)),
            };
        }
        let item = self.read_record();
        match item {
            Ok(_) => self.next += 1,
            Err(_) => self.done = true,
        }
        Some(item)
    }
}
