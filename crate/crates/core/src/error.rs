use std::io;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("io: {0}")]
    Io(#[from] io::Error),

    #[error("not an embedding dump (magic {found:?})")]
    BadMagic { found: [u8; 4] },

    #[error("not a centroid file (magic {found:?})")]
    BadCentroidMagic { found: [u8; 4] },

    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),

    #[error("invalid header: {0}")]
    InvalidHeader(String),

    #[error("truncated record #{ordinal}{}", id_suffix(.sample_id))]
    Truncated {
        ordinal: u64,
        sample_id: Option<String>,
    },

    #[error("record #{ordinal} ({sample_id}): {reason}")]
    InvalidRecord {
        ordinal: u64,
        sample_id: String,
        reason: String,
    },

    #[error("writing record {sample_id}: {source}")]
    Sink {
        sample_id: String,
        #[source]
        source: io::Error,
    },

    #[error("duplicate sample_id {0}")]
    DuplicateId(String),

    #[error("record count mismatch: header declares {declared}, found {actual}")]
    CountMismatch { declared: u64, actual: u64 },

    #[error("trailing bytes after {0} records")]
    TrailingBytes(u64),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("need at least 2 feature vectors, got {0}")]
    TooFewSamples(usize),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not PSD: eigenvalue {eigenvalue:e} below tolerance -{tolerance:e}")]
    NotPsd { eigenvalue: f64, tolerance: f64 },

    #[error("alpha must lie in (0, 1), got {0}")]
    InvalidAlpha(f64),

    #[error("empty series")]
    EmptySeries,

    #[error("negative probability {0}")]
    NegativeProbability(f64),

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("layer shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("class {0} has no real records")]
    EmptyClass(u16),

    #[error("no centroid for class {0}")]
    MissingCentroid(u16),

    #[error("class {class}: synthetic pool has {available}, needs {required} (short by {})", .required - .available)]
    InsufficientPool {
        class: u16,
        available: usize,
        required: usize,
    },

    #[error("pool of {pool} is smaller than keep count {keep}")]
    PoolTooSmall { pool: usize, keep: usize },

    #[error("run index {index} out of range 1..={runs}")]
    RunIndex { index: usize, runs: usize },

    #[error("sample_id collision: {0}")]
    IdCollision(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("degenerate covariance for class {0}")]
    DegenerateCovariance(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

fn id_suffix(id: &Option<String>) -> String {
    match id {
        Some(id) => format!(" ({id})"),
        None => String::new(),
    }
}

impl Error {
    /// Short stable tag used in single-line CLI errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Io(_) => "io",
            Error::BadMagic { .. } | Error::BadCentroidMagic { .. } => "bad-magic",
            Error::UnsupportedVersion(_) => "unsupported-version",
            Error::InvalidHeader(_) => "invalid-header",
            Error::Truncated { .. } => "truncated",
            Error::InvalidRecord { .. } => "invalid-record",
            Error::Sink { .. } => "io",
            Error::DuplicateId(_) => "duplicate-id",
            Error::CountMismatch { .. } => "count-mismatch",
            Error::TrailingBytes(_) => "trailing-bytes",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::TooFewSamples(_) => "too-few-samples",
            Error::NotSymmetric(_) => "not-symmetric",
            Error::NotPsd { .. } => "not-psd",
            Error::InvalidAlpha(_) => "invalid-alpha",
            Error::EmptySeries => "empty-series",
            Error::NegativeProbability(_) => "negative-probability",
            Error::InvalidDistribution(_) => "invalid-distribution",
            Error::ShapeMismatch(_) => "shape-mismatch",
            Error::EmptyClass(_) => "empty-class",
            Error::MissingCentroid(_) => "missing-centroid",
            Error::InsufficientPool { .. } => "insufficient-pool",
            Error::PoolTooSmall { .. } => "pool-too-small",
            Error::RunIndex { .. } => "run-index",
            Error::IdCollision(_) => "id-collision",
            Error::Config(_) => "config",
            Error::DegenerateCovariance(_) => "degenerate-covariance",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
