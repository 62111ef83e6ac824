use crate::error::{Error, Result};
use crate::store::{SampleRecord, PROB_SUM_TOLERANCE};

/// `-sum p ln p` of one distribution, with `0 ln 0 = 0`.
///
/// The input is renormalized to sum exactly to one before use; the result is
/// clamped into `[0, ln C]` to absorb rounding.
pub fn predictive_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::InvalidDistribution("empty vector".into()));
    }
    let mut sum = 0.0;
    for &v in p {
        if v < 0.0 {
            return Err(Error::NegativeProbability(v));
        }
        if !v.is_finite() {
            return Err(Error::InvalidDistribution(format!("entry {v}")));
        }
        sum += v;
    }
    if (sum - 1.0).abs() > PROB_SUM_TOLERANCE {
        return Err(Error::InvalidDistribution(format!("sums to {sum}")));
    }
    let h: f64 = p
        .iter()
        .map(|&v| v / sum)
        .filter(|&q| q > 0.0)
        .map(|q| -q * q.ln())
        .sum();
    Ok(h.clamp(0.0, (p.len() as f64).ln()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyScore {
    pub sample_id: String,
    pub per_run: Vec<f64>,
    pub mean_entropy: f64,
}

/// Entropy of every run and their arithmetic mean.
pub fn score_entropy(record: &SampleRecord) -> Result<EntropyScore> {
    score_entropy_runs(record, record.runs())
}

/// As [`score_entropy`], restricted to the first `runs` MC runs.
pub fn score_entropy_runs(record: &SampleRecord, runs: usize) -> Result<EntropyScore> {
    if runs == 0 || runs > record.runs() {
        return Err(Error::RunIndex {
            index: runs,
            runs: record.runs(),
        });
    }
    let per_run = record.probs[..runs]
        .iter()
        .map(|p| {
            let p: Vec<f64> = p.iter().map(|&v| v as f64).collect();
            predictive_entropy(&p)
        })
        .collect::<Result<Vec<_>>>()?;
    let mean_entropy = per_run.iter().sum::<f64>() / runs as f64;
    Ok(EntropyScore {
        sample_id: record.sample_id.clone(),
        per_run,
        mean_entropy,
    })
}
