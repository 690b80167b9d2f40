//! Dense symmetric eigensolvers.
//!
//! Two independent algorithms are provided: Householder tridiagonalization
//! followed by implicit QL ([`eigh_householder_ql`]) and cyclic Jacobi
//! rotations ([`eigh_jacobi`]). The second serves as an oracle for the first.
//! Singular values of complex matrices come either from the Gram matrix
//! ([`singular_values_via_gram`]) or, when small values must keep absolute
//! accuracy, from bidiagonalization ([`singular_values`]).

mod gram;
mod householder_ql;
mod jacobi;
mod svd;

use serde::{Deserialize, Serialize};

pub use gram::singular_values_via_gram;
pub use householder_ql::{eigh_householder_ql, eigh_tridiagonal};
pub use jacobi::eigh_jacobi;
pub use svd::singular_values;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Absolute asymmetry accepted (relative to `max(1, max|A|)`) before input
/// is rejected as non-symmetric.
pub const SYMMETRY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    HouseholderQl,
    Jacobi,
    CommutingTridiagonal,
}

/// Eigenvalues sorted non-increasing, with optional eigenvectors stored as
/// the columns of `vectors` (column `j` pairs with `values[j]`).
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: Option<DenseMatrix>,
    pub method: Method,
    /// `max_j ||A v_j - lambda_j v_j||_inf`, when vectors were computed.
    pub residual: Option<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn vector(&self, j: usize) -> Option<Vec<f64>> {
        self.vectors.as_ref().map(|v| v.column(j))
    }

    /// Values only, for callers that sort or count.
    pub fn from_values(mut values: Vec<f64>, method: Method) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            vectors: None,
            method,
            residual: None,
        }
    }

    /// Sorts eigenpairs descending, fixes eigenvector signs, and records the
    /// residual against `a`.
    pub(crate) fn assemble(
        a: &DenseMatrix,
        values: Vec<f64>,
        vectors: Option<DenseMatrix>,
        method: Method,
    ) -> Self {
        let n = values.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
        let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();

        let vectors = vectors.map(|v| {
            let mut out = DenseMatrix::zeros(v.rows(), n);
            for (dst, &src) in order.iter().enumerate() {
                let mut col = v.column(src);
                normalize_sign(&mut col);
                for (i, x) in col.into_iter().enumerate() {
                    out[(i, dst)] = x;
                }
            }
            out
        });
        let residual = vectors.as_ref().map(|v| residual(a, &sorted, v));
        Self {
            values: sorted,
            vectors,
            method,
            residual,
        }
    }
}

/// Sign convention: the first component that is not negligible is positive.
pub(crate) fn normalize_sign(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let cutoff = scale * 1e-12;
    if let Some(first) = v.iter().find(|x| x.abs() > cutoff) {
        if *first < 0.0 {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
}

pub(crate) fn residual(a: &DenseMatrix, values: &[f64], vectors: &DenseMatrix) -> f64 {
    let n = a.rows();
    let mut worst = 0.0f64;
    for (j, &lambda) in values.iter().enumerate() {
        let v = vectors.column(j);
        for i in 0..n {
            let av: f64 = a.row(i).iter().zip(&v).map(|(x, y)| x * y).sum();
            worst = worst.max((av - lambda * v[i]).abs());
        }
    }
    worst
}

/// Rejects non-square or asymmetric input; returns the exactly symmetrized
/// average `(A + A^T) / 2`.
pub(crate) fn symmetrized(a: &DenseMatrix) -> Result<DenseMatrix> {
    if !a.is_square() {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let asymmetry = a.max_asymmetry();
    if asymmetry > SYMMETRY_TOL * a.max_abs().max(1.0) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    let n = a.rows();
    let mut s = a.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (a[(i, j)] + a[(j, i)]);
            s[(i, j)] = avg;
            s[(j, i)] = avg;
        }
    }
    Ok(s)
}
