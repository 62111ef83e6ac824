use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};

/// Largest absolute asymmetry `|m[i,j] - m[j,i]|`.
pub(crate) fn asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            worst = worst.max((m[(i, j)] - m[(j, i)]).abs());
        }
    }
    worst
}

pub(crate) fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

/// Tolerance applied to negative eigenvalues of a PSD matrix.
pub(crate) fn psd_tolerance(largest: f64) -> f64 {
    1e-6 * largest.max(1.0)
}

/// Symmetric eigendecomposition with eigenvalues clipped to zero, after
/// checking none falls below `-psd_tolerance`.
pub(crate) fn psd_eigen(m: &DMatrix<f64>) -> Result<SymmetricEigen<f64, nalgebra::Dyn>> {
    let mut eig = SymmetricEigen::new(symmetrize(m));
    let largest = eig.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let smallest = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let tolerance = psd_tolerance(largest);
    if smallest < -tolerance {
        return Err(Error::NotPsd {
            eigenvalue: smallest,
            tolerance,
        });
    }
    eig.eigenvalues.iter_mut().for_each(|v| *v = v.max(0.0));
    Ok(eig)
}

/// Principal square root of a symmetric PSD matrix.
///
/// Negative eigenvalues no smaller than `-1e-6 * max(1, largest)` are treated
/// as rounding noise and clipped to zero; anything below is an error.
pub fn sqrtm_psd(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    let scale = m.amax().max(1.0);
    let skew = asymmetry(m);
    if skew > 1e-8 * scale {
        return Err(Error::NotSymmetric(skew));
    }
    let eig = psd_eigen(m)?;
    let roots = eig.eigenvalues.map(f64::sqrt);
    let v = &eig.eigenvectors;
    let s = v * DMatrix::from_diagonal(&roots) * v.transpose();
    Ok(symmetrize(&s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
        let a = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        a.qr().q()
    }

    #[test]
    fn identity_and_diagonal() {
        let i = DMatrix::<f64>::identity(4, 4);
        assert!((sqrtm_psd(&i).unwrap() - &i).amax() < 1e-12);
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![4.0, 9.0]));
        let s = sqrtm_psd(&d).unwrap();
        let want = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 3.0]);
        assert!((s - want).amax() < 1e-12);
    }

    #[test]
    fn recovers_constructed_root() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1usize, 2, 5, 12] {
            let q = random_orthogonal(n, &mut rng);
            let spectrum: Vec<f64> = (0..n)
                .map(|i| if i == 0 { 0.0 } else { rng.random_range(0.0..3.0) })
                .collect();
            let s0 = &q * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(spectrum)) * q.transpose();
            let s0 = symmetrize(&s0);
            let m = &s0 * &s0;
            let s = sqrtm_psd(&m).unwrap();
            assert!((&s - &s0).amax() < 1e-5, "n={n}");
            assert!((&s * &s - &m).amax() <= 1e-6 * m.amax().max(1.0));
        }
    }

    #[test]
    fn clips_tiny_negative_eigenvalue() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1e-9]);
        let s = sqrtm_psd(&m).unwrap();
        assert_eq!(s[(1, 1)], 0.0);
    }

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -0.5]);
        match sqrtm_psd(&m).unwrap_err() {
            Error::NotPsd { eigenvalue, .. } => assert!((eigenvalue + 0.5).abs() < 1e-12),
            e => panic!("{e:?}"),
        }
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert!(matches!(sqrtm_psd(&m).unwrap_err(), Error::NotSymmetric(_)));
    }
}
