use crate::error::{Error, Result};

/// Smoothing factor used for model selection unless overridden.
pub const DEFAULT_ALPHA: f64 = 0.3;

/// EMA of a per-epoch score series:
/// `d_1 = x_1`, `d_t = alpha * d_{t-1} + (1 - alpha) * x_t`.
///
/// Note the weighting: `alpha` multiplies the running value, so the newest
/// observation carries `1 - alpha`.
pub fn ema_smooth(raw: &[f64], alpha: f64) -> Result<Vec<f64>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidAlpha(alpha));
    }
    let (&first, rest) = raw.split_first().ok_or(Error::EmptySeries)?;
    let mut out = Vec::with_capacity(raw.len());
    out.push(first);
    let mut prev = first;
    for &x in rest {
        prev = alpha * prev + (1.0 - alpha) * x;
        out.push(prev);
    }
    Ok(out)
}

/// Raw and smoothed FID per saved epoch.
#[derive(Debug, Clone, PartialEq)]
pub struct FidCurve {
    epochs: Vec<u32>,
    raw: Vec<f64>,
    alpha: f64,
    smoothed: Vec<f64>,
}

impl FidCurve {
    /// `points` must be in strictly increasing epoch order.
    pub fn new(points: &[(u32, f64)], alpha: f64) -> Result<Self> {
        if let Some(w) = points.windows(2).find(|w| w[0].0 >= w[1].0) {
            return Err(Error::Parse(format!(
                "epochs must be strictly increasing ({} then {})",
                w[0].0, w[1].0
            )));
        }
        let raw: Vec<f64> = points.iter().map(|p| p.1).collect();
        let smoothed = ema_smooth(&raw, alpha)?;
        Ok(FidCurve {
            epochs: points.iter().map(|p| p.0).collect(),
            raw,
            alpha,
            smoothed,
        })
    }

    pub fn epochs(&self) -> &[u32] {
        &self.epochs
    }

    pub fn raw(&self) -> &[f64] {
        &self.raw
    }

    pub fn smoothed(&self) -> &[f64] {
        &self.smoothed
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }

    /// Epoch of the lowest unsmoothed score, earliest on ties.
    pub fn raw_argmin(&self) -> u32 {
        self.epochs[argmin(&self.raw)]
    }
}

fn argmin(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v < values[best] {
            best = i;
        }
    }
    best
}

/// Epoch with the lowest smoothed FID; ties go to the earliest epoch.
pub fn select_model(curve: &FidCurve) -> u32 {
    curve.epochs[argmin(&curve.smoothed)]
}
