//! Numerical recovery of a symmetric tridiagonal matrix `T` commuting with a
//! given symmetric `B`, and the eigenvector path through `T`.
//!
//! `BT - TB` is linear in the `2N - 1` free entries of `T`. Writing `T` in
//! coordinates `x = (diag, sqrt(2) offdiag)` makes `||x|| = ||T||_F`, and the
//! commutator's Frobenius norm is `||A x||` for an explicit
//! `N(N-1)/2 x (2N-1)` matrix `A`. Orthogonality to the identity removes
//! one direction; the fit is the smallest right singular vector of what
//! remains.

use serde::{Deserialize, Serialize};

use crate::eigen::{eigh_householder_ql, eigh_tridiagonal, normalize_sign, Method, Spectrum};
use crate::error::{invalid, Error, Result};
use crate::linalg::{dot, norm2, DenseMatrix};

/// A fit with a larger commutator is not used for eigenvectors.
pub const COMMUTATOR_TOL: f64 = 1e-8;

/// Two smallest singular values closer than this flag a degenerate fit.
pub const DEGENERACY_TOL: f64 = 1e-12;

/// Eigenvalues closer than this to a neighbour are compared as a cluster.
pub const GAP_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TridiagonalFit {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    /// `||BT - TB||_F` with `||T||_F = 1`.
    pub commutator_norm: f64,
    /// Smallest and second-smallest singular values of the constrained
    /// commutation operator.
    pub smallest_singular_values: [f64; 2],
    /// More than one direction commutes (to `DEGENERACY_TOL`).
    pub degenerate: bool,
}

impl TridiagonalFit {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.offdiag[i]
            } else if j + 1 == i {
                self.offdiag[j]
            } else {
                0.0
            }
        })
    }
}

/// Position of `(i, j)`, `i < j`, in the row-major strict upper triangle.
#[inline]
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    i * n - i * (i + 1) / 2 + (j - i - 1)
}

/// Columns of the commutation operator, one per coordinate of `x`.
fn commutation_columns(b: &DenseMatrix) -> Vec<Vec<f64>> {
    let n = b.rows();
    let rows = n * (n - 1) / 2;
    let scale = std::f64::consts::SQRT_2;
    let half = std::f64::consts::FRAC_1_SQRT_2;
    let mut cols = Vec::with_capacity(2 * n - 1);

    // T = E_tt: (BT - TB)[i, j] = B[i,t] [j = t] - [i = t] B[t,j].
    for t in 0..n {
        let mut col = vec![0.0; rows];
        for i in 0..t {
            col[pair_index(n, i, t)] += scale * b[(i, t)];
        }
        for j in (t + 1)..n {
            col[pair_index(n, t, j)] -= scale * b[(t, j)];
        }
        cols.push(col);
    }
    // T = (E_{s,s+1} + E_{s+1,s}) / sqrt(2).
    for s in 0..n.saturating_sub(1) {
        let mut col = vec![0.0; rows];
        let f = scale * half;
        for i in 0..=s {
            col[pair_index(n, i, s + 1)] += f * b[(i, s)];
        }
        for i in 0..s {
            col[pair_index(n, i, s)] += f * b[(i, s + 1)];
        }
        for j in (s + 1)..n {
            col[pair_index(n, s, j)] -= f * b[(s + 1, j)];
        }
        for j in (s + 2)..n {
            col[pair_index(n, s + 1, j)] -= f * b[(s, j)];
        }
        cols.push(col);
    }
    cols
}

/// Fits the symmetric tridiagonal `T`, `||T||_F = 1`, `tr T = 0`, that
/// minimizes `||BT - TB||_F`.
pub fn fit_commuting_tridiagonal(b: &DenseMatrix) -> Result<TridiagonalFit> {
    let b = crate::eigen::symmetrized(b)?;
    let n = b.rows();
    if n < 2 {
        return Err(invalid("commuting fit needs N >= 2"));
    }
    let mut cols = commutation_columns(&b);
    let params = cols.len();

    // Householder H with H e_1 = c, c = (1,..,1,0,..,0)/sqrt(N) the trace
    // direction; columns 2.. of H span the traceless coordinates.
    let mut u = vec![0.0; params];
    let inv = 1.0 / (n as f64).sqrt();
    u[..n].iter_mut().for_each(|x| *x = inv);
    u[0] -= 1.0;
    let un = norm2(&u);
    u.iter_mut().for_each(|x| *x /= un);

    // A H = A - 2 (A u) u^T, then drop column 0.
    let rows = cols[0].len();
    let mut au = vec![0.0; rows];
    for (col, &uj) in cols.iter().zip(&u) {
        if uj != 0.0 {
            for (a, c) in au.iter_mut().zip(col) {
                *a += uj * c;
            }
        }
    }
    for (col, &uj) in cols.iter_mut().zip(&u) {
        if uj != 0.0 {
            for (c, a) in col.iter_mut().zip(&au) {
                *c -= 2.0 * uj * a;
            }
        }
    }
    cols.remove(0);

    let r = householder_r(cols);
    let (singular, right) = one_sided_jacobi(r)?;

    // Smallest singular value and its direction.
    let mut order: Vec<usize> = (0..singular.len()).collect();
    order.sort_by(|&i, &j| singular[i].total_cmp(&singular[j]).then(i.cmp(&j)));
    let smallest = [
        singular[order[0]],
        singular.get(order[1]).copied().unwrap_or(f64::INFINITY),
    ];
    let y = &right[order[0]];

    // x = H [0; y]
    let mut x = vec![0.0; params];
    x[1..].copy_from_slice(y);
    let ux = dot(&u, &x);
    for (xi, ui) in x.iter_mut().zip(&u) {
        *xi -= 2.0 * ux * ui;
    }
    normalize_sign(&mut x);
    let norm = norm2(&x);
    x.iter_mut().for_each(|v| *v /= norm);

    let diag = x[..n].to_vec();
    let offdiag: Vec<f64> = x[n..]
        .iter()
        .map(|v| v * std::f64::consts::FRAC_1_SQRT_2)
        .collect();
    let mut fit = TridiagonalFit {
        diag,
        offdiag,
        commutator_norm: 0.0,
        smallest_singular_values: smallest,
        degenerate: (smallest[1] - smallest[0]).abs() <= DEGENERACY_TOL,
    };
    fit.commutator_norm = commutator_norm(&b, &fit.to_dense())?;
    Ok(fit)
}

/// `||BT - TB||_F / ||T||_F`.
pub fn commutator_norm(b: &DenseMatrix, t: &DenseMatrix) -> Result<f64> {
    let bt = b.matmul(t)?;
    let tb = t.matmul(b)?;
    let tn = t.frobenius_norm();
    if tn == 0.0 {
        return Err(invalid("commutator of the zero matrix"));
    }
    Ok(bt.sub(&tb)?.frobenius_norm() / tn)
}

/// Upper-triangular factor of a Householder QR of the matrix whose columns
/// are `cols`. Returned column-major: `r[j][i]` is `R[i, j]`.
fn householder_r(mut cols: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let p = cols.len();
    let m = cols.first().map_or(0, Vec::len);
    let steps = p.min(m);
    for k in 0..steps {
        let (head, tail) = cols.split_at_mut(k + 1);
        let col = &mut head[k];
        let norm = norm2(&col[k..]);
        if norm == 0.0 {
            continue;
        }
        let alpha = if col[k] > 0.0 { -norm } else { norm };
        let mut v = col[k..].to_vec();
        v[0] -= alpha;
        let vn = norm2(&v);
        if vn == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vn);
        col[k] = alpha;
        col[k + 1..].iter_mut().for_each(|x| *x = 0.0);
        for other in tail.iter_mut() {
            let seg = &mut other[k..];
            let s = 2.0 * dot(seg, &v);
            for (x, vi) in seg.iter_mut().zip(&v) {
                *x -= s * vi;
            }
        }
    }
    cols.into_iter()
        .map(|mut c| {
            c.truncate(p);
            c.resize(p, 0.0);
            c
        })
        .collect()
}

/// Hestenes one-sided Jacobi on the columns of a square matrix. Returns the
/// singular values and the right singular vectors (as `Vec`s).
fn one_sided_jacobi(mut g: Vec<Vec<f64>>) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    const MAX_SWEEPS: usize = 80;
    let p = g.len();
    let mut v: Vec<Vec<f64>> = (0..p)
        .map(|i| {
            let mut e = vec![0.0; p];
            e[i] = 1.0;
            e
        })
        .collect();

    for sweep in 0.. {
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                method: "one-sided Jacobi",
                iterations: MAX_SWEEPS,
            });
        }
        let mut rotated = false;
        for i in 0..p {
            for j in (i + 1)..p {
                let alpha = dot(&g[i], &g[i]);
                let beta = dot(&g[j], &g[j]);
                let gamma = dot(&g[i], &g[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate_pair(&mut g, i, j, c, s);
                rotate_pair(&mut v, i, j, c, s);
            }
        }
        if !rotated {
            break;
        }
    }
    let sv = g.iter().map(|c| norm2(c)).collect();
    Ok((sv, v))
}

fn rotate_pair(cols: &mut [Vec<f64>], i: usize, j: usize, c: f64, s: f64) {
    let (lo, hi) = cols.split_at_mut(j);
    for (a, b) in lo[i].iter_mut().zip(hi[0].iter_mut()) {
        let x = *a;
        let y = *b;
        *a = c * x - s * y;
        *b = s * x + c * y;
    }
}

/// Eigenvectors of `b` obtained as eigenvectors of the fitted tridiagonal,
/// ordered by Rayleigh quotient `v^T B v` (descending). Values are the
/// Rayleigh quotients.
///
/// Fails if the fit's commutator exceeds [`COMMUTATOR_TOL`], or if the
/// resulting vectors are not eigenvectors of `b` to
/// `1e-8 (1 + max |lambda|)`, which happens when `T` has a repeated
/// eigenvalue whose eigenspace `b` does not act on as a scalar.
pub fn eigenvectors_via_tridiagonal(fit: &TridiagonalFit, b: &DenseMatrix) -> Result<Spectrum> {
    if b.rows() != fit.n() || !b.is_square() {
        return Err(Error::Dimension(format!(
            "fit of size {} against a {}x{} matrix",
            fit.n(),
            b.rows(),
            b.cols()
        )));
    }
    if !(fit.commutator_norm <= COMMUTATOR_TOL) {
        return Err(Error::UnusableFit(format!(
            "commutator norm {:e} above {COMMUTATOR_TOL:e}",
            fit.commutator_norm
        )));
    }
    let t_spectrum = eigh_tridiagonal(&fit.diag, &fit.offdiag, true)?;
    let vectors = t_spectrum.vectors.expect("vectors requested");
    let n = fit.n();
    let rayleigh: Vec<f64> = (0..n)
        .map(|j| {
            let v = vectors.column(j);
            let bv = b.matvec(&v).expect("square");
            dot(&v, &bv)
        })
        .collect();
    let spectrum = Spectrum::assemble(b, rayleigh, Some(vectors), Method::CommutingTridiagonal);
    let scale = 1.0 + spectrum.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let res = spectrum.residual.unwrap_or(f64::INFINITY);
    if !(res <= 1e-8 * scale) {
        return Err(Error::UnusableFit(format!(
            "tridiagonal eigenvectors have residual {res:e} against B"
        )));
    }
    Ok(spectrum)
}

/// Cross-check of the tridiagonal path against a direct eigensolve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathComparison {
    /// Eigenvalues whose nearest neighbour is more than `GAP_TOL` away.
    pub separated: usize,
    /// Eigenvalues inside clusters, compared by subspace angle instead.
    pub clustered: usize,
    pub max_value_diff: f64,
    /// Smallest `|<v_direct, v_tridiagonal>|` over separated eigenvalues.
    pub min_alignment: f64,
    /// Largest principal angle (radians) between matched cluster subspaces.
    pub max_cluster_angle: f64,
    /// Per-index alignment; `None` for clustered eigenvalues.
    pub alignment: Vec<Option<f64>>,
}

impl PathComparison {
    pub fn passed(&self, value_tol: f64) -> bool {
        self.max_value_diff <= value_tol
            && self.min_alignment >= 0.999
            && self.max_cluster_angle <= 1e-6
    }
}

pub fn compare_with_direct(via_t: &Spectrum, b: &DenseMatrix) -> Result<PathComparison> {
    let direct = eigh_householder_ql(b, true)?;
    let (dv, tv) = match (&direct.vectors, &via_t.vectors) {
        (Some(d), Some(t)) => (d, t),
        _ => return Err(invalid("both spectra need eigenvectors")),
    };
    let n = direct.len();
    if via_t.len() != n {
        return Err(Error::Dimension("spectra of different sizes".into()));
    }
    let values = &direct.values;

    // Maximal runs with consecutive gaps <= GAP_TOL.
    let mut clusters: Vec<(usize, usize)> = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || values[i - 1] - values[i] > GAP_TOL {
            clusters.push((start, i));
            start = i;
        }
    }

    let mut cmp = PathComparison {
        separated: 0,
        clustered: 0,
        max_value_diff: 0.0,
        min_alignment: 1.0,
        max_cluster_angle: 0.0,
        alignment: vec![None; n],
    };
    for (lo, hi) in clusters {
        if hi - lo == 1 {
            let a = dot(&dv.column(lo), &tv.column(lo)).abs();
            cmp.separated += 1;
            cmp.max_value_diff = cmp
                .max_value_diff
                .max((values[lo] - via_t.values[lo]).abs());
            cmp.min_alignment = cmp.min_alignment.min(a);
            cmp.alignment[lo] = Some(a);
        } else {
            cmp.clustered += hi - lo;
            cmp.max_cluster_angle = cmp.max_cluster_angle.max(subspace_angle(dv, tv, lo, hi)?);
        }
    }
    Ok(cmp)
}

/// Largest principal angle between the spans of columns `lo..hi` of `a`
/// and `b`, via `sin(theta_max) = ||(I - P_a) B||_2`.
fn subspace_angle(a: &DenseMatrix, b: &DenseMatrix, lo: usize, hi: usize) -> Result<f64> {
    let n = a.rows();
    let k = hi - lo;
    let qa = DenseMatrix::from_fn(n, k, |i, j| a[(i, lo + j)]);
    let qb = DenseMatrix::from_fn(n, k, |i, j| b[(i, lo + j)]);
    let proj = qa.matmul(&qa.transpose().matmul(&qb)?)?;
    let rest = qb.sub(&proj)?;
    let gram = rest.transpose().matmul(&rest)?;
    let top = eigh_householder_ql(&gram, false)?
        .values
        .first()
        .copied()
        .unwrap_or(0.0)
        .max(0.0);
    Ok(top.sqrt().min(1.0).asin())
}
