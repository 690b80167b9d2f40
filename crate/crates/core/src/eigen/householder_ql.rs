use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

use super::{symmetrized, Method, Spectrum};

/// Full symmetric eigendecomposition: Householder reduction to tridiagonal
/// form, then implicit QL with Wilkinson shifts.
///
/// Fails with [`Error::NoConvergence`] if the QL iteration needs more than
/// `50 n` steps in total.
pub fn eigh_householder_ql(a: &DenseMatrix, want_vectors: bool) -> Result<Spectrum> {
    let a = symmetrized(a)?;
    let n = a.rows();
    let (mut d, mut e, q) = tridiagonalize(a.clone(), want_vectors);
    // QL works on transposed eigenvectors so rotations touch contiguous rows.
    let mut zt = q.map(|q| q.transpose());
    ql_implicit(&mut d, &mut e, zt.as_mut())?;
    let vectors = zt.map(|zt| zt.transpose());
    debug_assert_eq!(d.len(), n);
    Ok(Spectrum::assemble(&a, d, vectors, Method::HouseholderQl))
}

/// Eigendecomposition of the symmetric tridiagonal matrix with main
/// diagonal `diag` and first off-diagonal `off` (`off.len() == diag.len() - 1`).
pub fn eigh_tridiagonal(diag: &[f64], off: &[f64], want_vectors: bool) -> Result<Spectrum> {
    let n = diag.len();
    if n > 0 && off.len() + 1 != n {
        return Err(Error::Dimension(format!(
            "off-diagonal of length {} for diagonal of length {n}",
            off.len()
        )));
    }
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.push(0.0);
    let mut zt = want_vectors.then(|| DenseMatrix::identity(n));
    ql_implicit(&mut d, &mut e, zt.as_mut())?;
    let t = DenseMatrix::from_fn(n, n, |i, j| {
        if i == j {
            diag[i]
        } else if i + 1 == j {
            off[i]
        } else if j + 1 == i {
            off[j]
        } else {
            0.0
        }
    });
    Ok(Spectrum::assemble(
        &t,
        d,
        zt.map(|zt| zt.transpose()),
        Method::HouseholderQl,
    ))
}

/// Reduces symmetric `a` to tridiagonal `Q^T A Q`. Returns the diagonal,
/// the off-diagonal padded with a trailing zero, and optionally `Q`.
fn tridiagonalize(mut a: DenseMatrix, want_q: bool) -> (Vec<f64>, Vec<f64>, Option<DenseMatrix>) {
    let n = a.rows();
    let mut q = want_q.then(|| DenseMatrix::identity(n));
    let mut e = vec![0.0; n];
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];

    for k in 0..n.saturating_sub(2) {
        let lo = k + 1;
        let len = n - lo;
        let alpha_sq: f64 = (lo..n).map(|i| a[(i, k)] * a[(i, k)]).sum();
        let x0 = a[(lo, k)];
        let norm = alpha_sq.sqrt();
        // Nothing to eliminate below the subdiagonal.
        let tail_sq = alpha_sq - x0 * x0;
        if tail_sq <= f64::MIN_POSITIVE {
            e[k] = x0;
            continue;
        }
        let alpha = if x0 > 0.0 { -norm } else { norm };

        // v = x - alpha e_1, normalized.
        for (j, i) in (lo..n).enumerate() {
            v[j] = a[(i, k)];
        }
        v[0] -= alpha;
        let vnorm = v[..len].iter().map(|x| x * x).sum::<f64>().sqrt();
        v[..len].iter_mut().for_each(|x| *x /= vnorm);
        let v = &v[..len];

        // w = A_sub v ; q = 2 (w - (v.w) v) ; A_sub -= v q^T + q v^T
        for (j, i) in (lo..n).enumerate() {
            w[j] = a.row(i)[lo..].iter().zip(v).map(|(x, y)| x * y).sum();
        }
        let kappa: f64 = v.iter().zip(&w[..len]).map(|(x, y)| x * y).sum();
        for j in 0..len {
            w[j] = 2.0 * (w[j] - kappa * v[j]);
        }
        let w = &w[..len];
        for (r, i) in (lo..n).enumerate() {
            let row = &mut a.row_mut(i)[lo..];
            let (vr, wr) = (v[r], w[r]);
            for c in 0..len {
                row[c] -= vr * w[c] + wr * v[c];
            }
        }
        e[k] = alpha;
        for i in (lo + 1)..n {
            a[(i, k)] = 0.0;
            a[(k, i)] = 0.0;
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q H with H = I - 2 v v^T acting on columns lo..n.
            for i in 0..n {
                let row = &mut q.row_mut(i)[lo..];
                let s: f64 = row.iter().zip(v).map(|(x, y)| x * y).sum();
                let s2 = 2.0 * s;
                for (x, vj) in row.iter_mut().zip(v) {
                    *x -= s2 * vj;
                }
            }
        }
    }
    if n >= 2 {
        e[n - 2] = a[(n - 1, n - 2)];
    }
    let d = a.diagonal();
    (d, e, q)
}

/// Implicit QL on a symmetric tridiagonal matrix, in place. `e[i]` couples
/// rows `i` and `i+1`; `e[n-1]` is scratch. Rotations are applied to the
/// rows of `zt` when present.
fn ql_implicit(d: &mut [f64], e: &mut [f64], mut zt: Option<&mut DenseMatrix>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let cap = 50 * n;
    let mut iterations = 0usize;

    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::NoConvergence {
                    method: "implicit QL",
                    iterations,
                });
            }

            // Wilkinson shift from the leading 2x2 block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0f64, 1.0f64, 0.0f64);
            let mut deflated_early = false;

            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                if let Some(z) = zt.as_deref_mut() {
                    rotate_rows(z, i, s, c);
                }
            }
            if deflated_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[inline]
fn rotate_rows(z: &mut DenseMatrix, i: usize, s: f64, c: f64) {
    let cols = z.cols();
    let data = z.as_mut_slice();
    let (head, tail) = data.split_at_mut((i + 1) * cols);
    let upper = &mut head[i * cols..];
    let lower = &mut tail[..cols];
    for (zi, zi1) in upper.iter_mut().zip(lower.iter_mut()) {
        let f = *zi1;
        *zi1 = s * *zi + c * f;
        *zi = c * *zi - s * f;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diagonal() {
        let s = eigh_householder_ql(&DenseMatrix::identity(5), true).unwrap();
        assert!(s.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));

        let s = eigh_householder_ql(&DenseMatrix::from_diagonal(&[3.0, 1.0, 2.0]), true).unwrap();
        assert_eq!(s.values, vec![3.0, 2.0, 1.0]);
        let v = s.vectors.unwrap();
        assert_eq!(v.column(0), vec![1.0, 0.0, 0.0]);
        assert_eq!(v.column(1), vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn swap_matrix() {
        let a = DenseMatrix::from_row_major(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
        let s = eigh_householder_ql(&a, true).unwrap();
        assert!((s.values[0] - 1.0).abs() < 1e-15);
        assert!((s.values[1] + 1.0).abs() < 1e-15);
        assert!(s.residual.unwrap() < 1e-15);
    }

    #[test]
    fn empty_and_scalar() {
        let s = eigh_householder_ql(&DenseMatrix::zeros(0, 0), true).unwrap();
        assert!(s.is_empty());
        let s = eigh_householder_ql(&DenseMatrix::from_diagonal(&[-2.5]), true).unwrap();
        assert_eq!(s.values, vec![-2.5]);
    }

    #[test]
    fn tridiagonal_path() {
        // Path graph Laplacian-like: eigenvalues 2 - 2 cos(k pi / (n+1)).
        let n = 12;
        let s = eigh_tridiagonal(&vec![2.0; n], &vec![-1.0; n - 1], true).unwrap();
        for (j, v) in s.values.iter().enumerate() {
            let k = (n - j) as f64;
            let exact = 2.0 - 2.0 * (k * std::f64::consts::PI / (n as f64 + 1.0)).cos();
            assert!((v - exact).abs() < 1e-14);
        }
        assert!(s.residual.unwrap() < 1e-14);
        assert!(eigh_tridiagonal(&[1.0, 2.0], &[], false).is_err());
    }

    #[test]
    fn already_tridiagonal_columns_are_skipped() {
        let a = DenseMatrix::from_row_major(
            4,
            4,
            vec![
                1.0, 2.0, 0.0, 0.0, //
                2.0, 1.0, 0.0, 3.0, //
                0.0, 0.0, 5.0, 0.0, //
                0.0, 3.0, 0.0, -1.0,
            ],
        )
        .unwrap();
        let s = eigh_householder_ql(&a, true).unwrap();
        assert!(s.residual.unwrap() < 1e-13);
        assert!((s.sum() - a.trace()).abs() < 1e-13);
    }
}
