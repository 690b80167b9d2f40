use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DenseMatrix};

use super::eigh_householder_ql;

/// Gram eigenvalues below zero but above `-NEGATIVE_CLAMP * scale` are
/// treated as rounding and clamped to zero.
const NEGATIVE_CLAMP: f64 = 1e-12;

/// Singular values of `f`, descending, as square roots of the eigenvalues of
/// `F^* F`.
///
/// The Hermitian Gram matrix `G = X + jY` is solved through its real
/// symmetric embedding `[[X, -Y], [Y, X]]`, whose spectrum is that of `G`
/// with every eigenvalue doubled; pairs are collapsed after sorting.
pub fn singular_values_via_gram(f: &ComplexMatrix) -> Result<Vec<f64>> {
    let g = f.gram();
    let n = g.rows();
    let embed = DenseMatrix::from_fn(2 * n, 2 * n, |i, j| {
        let z = g[(i % n, j % n)];
        match (i < n, j < n) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    });
    let spectrum = eigh_householder_ql(&embed, false)?;
    let scale = spectrum
        .values
        .first()
        .copied()
        .unwrap_or(0.0)
        .abs()
        .max(1.0);

    spectrum
        .values
        .chunks_exact(2)
        .map(|pair| {
            let lambda = 0.5 * (pair[0] + pair[1]);
            if lambda < -NEGATIVE_CLAMP * scale {
                Err(Error::Indefinite { value: lambda })
            } else {
                Ok(lambda.max(0.0).sqrt())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::build_dft;
    use num_complex::Complex64;

    #[test]
    fn unitary_has_unit_singular_values() {
        let s = singular_values_via_gram(&build_dft(16).unwrap()).unwrap();
        assert_eq!(s.len(), 16);
        assert!(s.iter().all(|v| (v - 1.0).abs() < 1e-13));
    }

    #[test]
    fn single_unit_column() {
        let f = ComplexMatrix::from_fn(3, 1, |i, _| match i {
            0 => Complex64::new(0.6, 0.0),
            1 => Complex64::new(0.0, 0.8),
            _ => Complex64::new(0.0, 0.0),
        });
        let s = singular_values_via_gram(&f).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rank_one_complex() {
        // u v^* with |u| = 2, |v| = 3 has a single singular value 6.
        let u = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)];
        let v = [
            Complex64::new(0.0, 3.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let f = ComplexMatrix::from_fn(2, 3, |i, j| u[i] * v[j].conj());
        let s = singular_values_via_gram(&f).unwrap();
        assert!((s[0] - 6.0).abs() < 1e-14);
        assert!(s[1..].iter().all(|&x| x < 1e-7));
    }
}
