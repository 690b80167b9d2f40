use crate::error::Result;
use crate::linalg::ComplexMatrix;

use super::eigh_tridiagonal;

/// Singular values of `f`, descending, without forming `F^* F`.
///
/// `F = X + jY` is replaced by its real embedding `[[X, -Y], [Y, X]]`
/// (every singular value doubled), reduced to upper bidiagonal form by
/// Householder reflections, and the bidiagonal's singular values are read
/// off as the nonnegative eigenvalues of the Golub-Kahan tridiagonal
/// `[[0, B], [B^T, 0]]`. Small singular values keep absolute accuracy
/// `~ eps ||F||`; squaring through the Gram matrix would only give
/// `~ sqrt(eps) ||F||`.
pub fn singular_values(f: &ComplexMatrix) -> Result<Vec<f64>> {
    let (rows, cols) = (f.rows(), f.cols());
    if rows == 0 || cols == 0 {
        return Ok(Vec::new());
    }
    // Work on the taller orientation; F and F^* share singular values.
    let transpose = rows < cols;
    let (m, n) = if transpose {
        (2 * cols, 2 * rows)
    } else {
        (2 * rows, 2 * cols)
    };
    let mut a = vec![0.0; m * n];
    for i in 0..rows {
        for j in 0..cols {
            let z = f[(i, j)];
            let (r, c, im) = if transpose {
                (j, i, -z.im)
            } else {
                (i, j, z.im)
            };
            let (hr, hc) = (m / 2, n / 2);
            a[r * n + c] = z.re;
            a[(r + hr) * n + c + hc] = z.re;
            a[r * n + c + hc] = -im;
            a[(r + hr) * n + c] = im;
        }
    }

    let (d, e) = bidiagonalize(&mut a, m, n);
    // Off-diagonal of the Golub-Kahan matrix: d0, e0, d1, e1, ..., d_{n-1}.
    let mut off = Vec::with_capacity(2 * n - 1);
    for k in 0..n {
        off.push(d[k]);
        if k + 1 < n {
            off.push(e[k]);
        }
    }
    let spectrum = eigh_tridiagonal(&vec![0.0; 2 * n], &off, false)?;
    let mut sigma: Vec<f64> = spectrum.values[..n].iter().map(|v| v.abs()).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    Ok(sigma.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Householder reflector `H = I - tau v v^T` (with `v[0] = 1`) such that
/// `H x = beta e_1`. Overwrites `x[1..]` with `v[1..]`; returns
/// `(tau, beta)`.
fn householder(x: &mut [f64]) -> (f64, f64) {
    let alpha = x[0];
    let tail: f64 = x[1..].iter().map(|v| v * v).sum();
    if tail == 0.0 {
        return (0.0, alpha);
    }
    let norm = (alpha * alpha + tail).sqrt();
    let beta = if alpha <= 0.0 { norm } else { -norm };
    let scale = 1.0 / (alpha - beta);
    x[1..].iter_mut().for_each(|v| *v *= scale);
    ((beta - alpha) / beta, beta)
}

/// Reduces the row-major `m x n` matrix (`m >= n`) to upper bidiagonal form;
/// returns the diagonal and superdiagonal.
fn bidiagonalize(a: &mut [f64], m: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![0.0; m];
    let mut w = vec![0.0; n];
    for k in 0..n {
        // Column reflector on rows k..m.
        let len = m - k;
        for i in 0..len {
            v[i] = a[(k + i) * n + k];
        }
        let (tau, beta) = householder(&mut v[..len]);
        v[0] = 1.0;
        d[k] = beta;
        if tau != 0.0 && k + 1 < n {
            w[k + 1..].iter_mut().for_each(|x| *x = 0.0);
            for i in 0..len {
                let row = &a[(k + i) * n..(k + i + 1) * n];
                for j in k + 1..n {
                    w[j] += v[i] * row[j];
                }
            }
            for i in 0..len {
                let s = tau * v[i];
                let row = &mut a[(k + i) * n..(k + i + 1) * n];
                for j in k + 1..n {
                    row[j] -= s * w[j];
                }
            }
        }
        if k + 1 >= n {
            continue;
        }
        // Row reflector on columns k+1..n, applied to rows k+1..m.
        let len = n - k - 1;
        let mut u: Vec<f64> = a[k * n + k + 1..(k + 1) * n].to_vec();
        let (tau, beta) = householder(&mut u);
        u[0] = 1.0;
        e[k] = beta;
        if tau != 0.0 {
            for i in k + 1..m {
                let row = &mut a[i * n + k + 1..(i + 1) * n];
                let s: f64 = row.iter().zip(&u).map(|(x, y)| x * y).sum::<f64>() * tau;
                for j in 0..len {
                    row[j] -= s * u[j];
                }
            }
        }
    }
    (d, e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::singular_values_via_gram;
    use crate::kernels::{build_dft, unit_root};
    use num_complex::Complex64;

    #[test]
    fn unitary_has_unit_singular_values() {
        let s = singular_values(&build_dft(24).unwrap()).unwrap();
        assert_eq!(s.len(), 24);
        assert!(s.iter().all(|v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn rank_one_rectangular() {
        // u v^* with |u| = 2, |v| = 3.
        let u = [Complex64::new(2.0, 0.0), Complex64::new(0.0, 0.0)];
        let v = [
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(2.0, 0.0),
        ];
        let f = ComplexMatrix::from_fn(2, 3, |i, j| u[i] * v[j].conj());
        let s = singular_values(&f).unwrap();
        assert_eq!(s.len(), 2);
        assert!((s[0] - 6.0).abs() < 1e-14);
        assert!(s[1].abs() < 1e-15);
        let t = singular_values(&f.adjoint()).unwrap();
        assert!((t[0] - 6.0).abs() < 1e-14);
    }

    #[test]
    fn tiny_singular_value_keeps_absolute_accuracy() {
        // F = Q diag(1, 1e-12, 0.5) Q^* with Q the unitary DFT.
        let q = build_dft(3).unwrap();
        let sig = [1.0, 1e-12, 0.5];
        let f = ComplexMatrix::from_fn(3, 3, |i, j| {
            (0..3).map(|k| q[(i, k)] * sig[k] * q[(j, k)].conj()).sum()
        });
        let s = singular_values(&f).unwrap();
        assert!((s[0] - 1.0).abs() < 1e-15);
        assert!((s[1] - 0.5).abs() < 1e-15);
        assert!((s[2] - 1e-12).abs() < 1e-15, "{:e}", s[2]);
        // Through the Gram matrix this value is lost in rounding.
        let g = singular_values_via_gram(&f).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_gram_route_on_squares() {
        let f = ComplexMatrix::from_fn(7, 5, |i, j| {
            unit_root((i * i + 3 * j) as i128, 11) * (1.0 + 0.1 * (i + j) as f64)
        });
        let direct = singular_values(&f).unwrap();
        let gram = singular_values_via_gram(&f).unwrap();
        for (a, b) in direct.iter().zip(&gram) {
            assert!((a * a - b * b).abs() < 1e-12);
        }
    }

    #[test]
    fn empty() {
        assert!(singular_values(&ComplexMatrix::zeros(0, 3))
            .unwrap()
            .is_empty());
    }
}
