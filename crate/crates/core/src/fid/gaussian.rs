use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::sqrtm::{asymmetry, psd_eigen};
use crate::error::{Error, Result};

/// Samples per reduction block. Blocks are fixed by input order, so the
/// floating-point result does not depend on how many workers run them.
const BLOCK: usize = 512;

/// Mean and covariance of a feature set.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianStats {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianStats {
    /// Validates symmetry (within 1e-8) and positive semidefiniteness.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                actual: 0,
            });
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: cov.nrows().max(cov.ncols()),
            });
        }
        let skew = asymmetry(&cov);
        if skew > 1e-8 {
            return Err(Error::NotSymmetric(skew));
        }
        psd_eigen(&cov)?;
        Ok(GaussianStats { mean, cov })
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }
}

/// Arithmetic mean and unbiased (divisor `n - 1`) sample covariance.
pub fn fit_gaussian<V: AsRef<[f64]> + Sync>(features: &[V]) -> Result<GaussianStats> {
    let n = features.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let dim = features[0].as_ref().len();
    if dim == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if let Some(bad) = features.iter().find(|v| v.as_ref().len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: bad.as_ref().len(),
        });
    }

    let sums: Vec<DVector<f64>> = features
        .par_chunks(BLOCK)
        .map(|block| {
            let mut s = DVector::zeros(dim);
            for v in block {
                for (acc, &x) in s.iter_mut().zip(v.as_ref()) {
                    *acc += x;
                }
            }
            s
        })
        .collect();
    let mean = sums.into_iter().fold(DVector::zeros(dim), |acc, s| acc + s) / n as f64;

    let scatters: Vec<DMatrix<f64>> = features
        .par_chunks(BLOCK)
        .map(|block| {
            let mut m = DMatrix::zeros(dim, dim);
            let mut centered = DVector::zeros(dim);
            for v in block {
                for ((c, &x), &mu) in centered.iter_mut().zip(v.as_ref()).zip(mean.iter()) {
                    *c = x - mu;
                }
                m.ger(1.0, &centered, &centered, 1.0);
            }
            m
        })
        .collect();
    let scatter = scatters
        .into_iter()
        .fold(DMatrix::zeros(dim, dim), |acc, m| acc + m);
    let mut cov = scatter / (n - 1) as f64;
    // exact symmetry; ger accumulates both triangles identically but be explicit
    for i in 0..dim {
        for j in (i + 1)..dim {
            let v = 0.5 * (cov[(i, j)] + cov[(j, i)]);
            cov[(i, j)] = v;
            cov[(j, i)] = v;
        }
    }
    GaussianStats::new(mean, cov)
}
