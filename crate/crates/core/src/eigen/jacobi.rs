use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

use super::{symmetrized, Method, Spectrum};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-14;

/// Cyclic Jacobi eigensolver with eigenvectors.
///
/// Sweeps over all `(p, q)` pairs until the off-diagonal Frobenius mass is
/// below `1e-14 ||A||_F`. Intended for `n <= 256`; used as the reference
/// against which [`super::eigh_householder_ql`] is checked.
pub fn eigh_jacobi(a: &DenseMatrix) -> Result<Spectrum> {
    let original = symmetrized(a)?;
    let mut a = original.clone();
    let n = a.rows();
    let mut vt = DenseMatrix::identity(n);
    let total = a.frobenius_norm();

    let mut sweeps = 0;
    loop {
        if off_diagonal_norm(&a) <= OFF_DIAGONAL_TOL * total {
            break;
        }
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(Error::NoConvergence {
                method: "cyclic Jacobi",
                iterations: MAX_SWEEPS,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut vt, p, q);
            }
        }
    }

    let values = a.diagonal();
    Ok(Spectrum::assemble(
        &original,
        values,
        Some(vt.transpose()),
        Method::Jacobi,
    ))
}

fn off_diagonal_norm(a: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with a plane rotation `A <- J^T A J`.
fn rotate(a: &mut DenseMatrix, vt: &mut DenseMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let app = a[(p, p)];
    let aqq = a[(q, q)];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let n = a.rows();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        let new_p = c * akp - s * akq;
        let new_q = s * akp + c * akq;
        a[(k, p)] = new_p;
        a[(p, k)] = new_p;
        a[(k, q)] = new_q;
        a[(q, k)] = new_q;
    }
    a[(p, p)] = app - t * apq;
    a[(q, q)] = aqq + t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;

    let cols = vt.cols();
    let data = vt.as_mut_slice();
    let (lo, hi) = data.split_at_mut(q * cols);
    let row_p = &mut lo[p * cols..(p + 1) * cols];
    let row_q = &mut hi[..cols];
    for (vp, vq) in row_p.iter_mut().zip(row_q.iter_mut()) {
        let x = *vp;
        let y = *vq;
        *vp = c * x - s * y;
        *vq = s * x + c * y;
    }
}
