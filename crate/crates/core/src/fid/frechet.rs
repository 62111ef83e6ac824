use super::gaussian::GaussianStats;
use super::sqrtm::{symmetrize, sqrtm_psd};
use crate::error::{Error, Result};

/// Fréchet distance between two Gaussians,
/// `|mu_a - mu_b|^2 + Tr(S_a + S_b - 2 (S_a^1/2 S_b S_a^1/2)^1/2)`.
///
/// The cross term uses the symmetrized product so every square root is of
/// a symmetric PSD matrix. Small negative results from rounding are clamped
/// to zero.
pub fn frechet_distance(a: &GaussianStats, b: &GaussianStats) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    if a == b {
        return Ok(0.0);
    }
    let mean_term = (a.mean() - b.mean()).norm_squared();
    let root_a = sqrtm_psd(a.cov())?;
    let inner = symmetrize(&(&root_a * b.cov() * &root_a));
    let cross = sqrtm_psd(&inner)?.trace();
    let d = mean_term + a.cov().trace() + b.cov().trace() - 2.0 * cross;
    Ok(d.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};

    fn stats(mean: &[f64], cov: &[f64]) -> GaussianStats {
        let n = mean.len();
        GaussianStats::new(DVector::from_row_slice(mean), DMatrix::from_row_slice(n, n, cov)).unwrap()
    }

    #[test]
    fn identical_is_zero() {
        let a = stats(&[1.0, 2.0], &[2.0, 0.3, 0.3, 1.0]);
        assert_eq!(frechet_distance(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn mean_gap_only() {
        let a = stats(&[0.0], &[1.0]);
        let b = stats(&[3.0], &[1.0]);
        assert!((frechet_distance(&a, &b).unwrap() - 9.0).abs() < 1e-9);
    }

    #[test]
    fn commuting_diagonal_covariances() {
        let a = stats(&[0.0, 0.0], &[1.0, 0.0, 0.0, 4.0]);
        let b = stats(&[0.0, 0.0], &[4.0, 0.0, 0.0, 1.0]);
        assert!((frechet_distance(&a, &b).unwrap() - 2.0).abs() < 1e-9);
    }

    #[test]
    fn dimension_mismatch() {
        let a = stats(&[0.0], &[1.0]);
        let b = stats(&[0.0, 0.0], &[1.0, 0.0, 0.0, 1.0]);
        assert!(frechet_distance(&a, &b).is_err());
    }
}
