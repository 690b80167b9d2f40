//! Builders for the time-frequency limiting matrices.
//!
//! The periodic prolate matrix has Dirichlet-kernel entries
//! `sin(2 pi W k) / (M sin(pi k / M))` with `k = m - n` and `W = (2K+1)/(2M)`;
//! its classical counterpart uses the sinc kernel `sin(2 pi W k) / (pi k)`.
//! Both are symmetric Toeplitz and are stored by their first column.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::linalg::{ComplexMatrix, DenseMatrix};

/// The triple `(M, N, K)`: ambient length, time-limit length and
/// half-bandwidth. The bandwidth ratio is `W = (2K+1)/(2M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProlateParams {
    m: usize,
    n: usize,
    k: usize,
}

impl ProlateParams {
    /// Validates `1 <= N <= M` and `2K + 1 < M`.
    pub fn new(m: usize, n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("N must be positive"));
        }
        if n > m {
            return Err(invalid(format!("N = {n} exceeds M = {m}")));
        }
        if 2 * k + 1 >= m {
            return Err(invalid(format!(
                "2K+1 = {} must be strictly less than M = {m}",
                2 * k + 1
            )));
        }
        Ok(Self { m, n, k })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of retained DFT bins, `2K + 1`.
    #[inline]
    pub fn band(&self) -> usize {
        2 * self.k + 1
    }

    /// `W = (2K+1)/(2M)`, always in `(0, 1/2)`.
    pub fn w(&self) -> f64 {
        self.band() as f64 / (2.0 * self.m as f64)
    }

    /// `floor(N W)` computed in integer arithmetic.
    pub fn floor_nw(&self) -> usize {
        self.n * self.band() / (2 * self.m)
    }

    /// `N (2K+1) / M`, the approximate number of eigenvalues near one.
    pub fn cluster_point(&self) -> f64 {
        (self.n * self.band()) as f64 / self.m as f64
    }

    pub fn kernel(&self) -> DirichletKernel {
        DirichletKernel {
            ambient: self.m,
            band: self.band(),
        }
    }
}

/// Periodized sinc `sin(pi b k / M) / (M sin(pi k / M))` for a band of `b`
/// consecutive DFT bins out of `M`. With `b = 2K+1` this is the prolate
/// kernel; with `b = M/p` it is the Gram kernel of an `M/p` DFT block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DirichletKernel {
    ambient: usize,
    band: usize,
}

impl DirichletKernel {
    pub fn new(ambient: usize, band: usize) -> Result<Self> {
        if ambient == 0 || band == 0 || band > ambient {
            return Err(invalid(format!(
                "Dirichlet kernel needs 1 <= band <= ambient, got band {band}, ambient {ambient}"
            )));
        }
        Ok(Self { ambient, band })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn band(&self) -> usize {
        self.band
    }

    /// Bandwidth ratio `band / (2 * ambient)`.
    pub fn w(&self) -> f64 {
        self.band as f64 / (2.0 * self.ambient as f64)
    }

    /// Kernel value at offset `k`, `|k| < ambient`. The removable
    /// singularity at `k = 0` takes its limit `band / ambient`.
    pub fn entry(&self, k: i64) -> Result<f64> {
        let m = self.ambient as i64;
        if k.unsigned_abs() >= self.ambient as u64 {
            return Err(invalid(format!("offset {k} outside (-{m}, {m})")));
        }
        if k == 0 {
            return Ok(self.band as f64 / self.ambient as f64);
        }
        let num = sin_pi_ratio(self.band as i128 * k as i128, m as i128);
        let den = sin_pi_ratio(k as i128, m as i128);
        Ok(num / (self.ambient as f64 * den))
    }

    /// Leading `n x n` block of the `ambient x ambient` kernel matrix.
    pub fn symbol_matrix(&self, n: usize) -> Result<SymbolMatrix> {
        if n > self.ambient {
            return Err(invalid(format!(
                "dimension {n} exceeds ambient length {}",
                self.ambient
            )));
        }
        let symbol = (0..n as i64)
            .map(|k| self.entry(k))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolMatrix { symbol })
    }
}

/// `sin(pi * num / den)` with the argument reduced exactly modulo `2 pi`
/// before conversion to floating point.
pub(crate) fn sin_pi_ratio(num: i128, den: i128) -> f64 {
    let period = 2 * den;
    let r = num.rem_euclid(period);
    // sin(pi r / den) on [0, 2): fold to [0, 1/2] for the best accuracy.
    let (r, sign) = if r >= den { (r - den, -1.0) } else { (r, 1.0) };
    let r = if 2 * r > den { den - r } else { r };
    sign * (PI * r as f64 / den as f64).sin()
}

/// `cos(2 pi num / den)`, `sin(2 pi num / den)` with exact reduction.
pub(crate) fn unit_root(num: i128, den: i128) -> Complex64 {
    let r = num.rem_euclid(den);
    let theta = 2.0 * PI * r as f64 / den as f64;
    Complex64::new(theta.cos(), theta.sin())
}

/// Real symmetric Toeplitz matrix: entry `(i, j)` is `symbol[|i - j|]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolMatrix {
    symbol: Vec<f64>,
}

impl SymbolMatrix {
    pub fn from_symbol(symbol: Vec<f64>) -> Self {
        Self { symbol }
    }

    pub fn n(&self) -> usize {
        self.symbol.len()
    }

    pub fn symbol(&self) -> &[f64] {
        &self.symbol
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.symbol[i.abs_diff(j)]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        DenseMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// Sum of the diagonal, `n * symbol[0]`.
    pub fn trace(&self) -> f64 {
        self.symbol.first().map_or(0.0, |&d| d * self.n() as f64)
    }
}

impl From<&SymbolMatrix> for DenseMatrix {
    fn from(s: &SymbolMatrix) -> Self {
        s.to_dense()
    }
}

/// Dirichlet-kernel entry of the periodic prolate matrix at offset `k`.
pub fn dirichlet_entry(params: &ProlateParams, k: i64) -> Result<f64> {
    params.kernel().entry(k)
}

/// Leading `N x N` principal submatrix of the `M x M` periodic prolate matrix.
pub fn build_periodic_prolate(params: &ProlateParams) -> SymbolMatrix {
    params
        .kernel()
        .symbol_matrix(params.n())
        .expect("validated params keep offsets inside one period")
}

/// The classical (sinc-kernel) prolate matrix of size `n` and bandwidth `w`.
pub fn build_sinc_prolate(n: usize, w: f64) -> Result<SymbolMatrix> {
    check_bandwidth(w)?;
    let symbol = (0..n)
        .map(|k| {
            if k == 0 {
                2.0 * w
            } else {
                let k = k as f64;
                (2.0 * PI * w * k).sin() / (PI * k)
            }
        })
        .collect();
    Ok(SymbolMatrix { symbol })
}

fn check_bandwidth(w: f64) -> Result<()> {
    if !(w > 0.0 && w < 0.5) {
        return Err(invalid(format!("bandwidth W = {w} outside (0, 1/2)")));
    }
    Ok(())
}

/// Unitary DFT matrix `F[m, n] = exp(-2 pi j m n / M) / sqrt(M)`.
pub fn build_dft(m: usize) -> Result<ComplexMatrix> {
    dft_block(m, m, 0, 0)
}

/// `L x L` block of `F_M`, `L = M / p`, starting at `(row_offset, col_offset)`.
/// Row and column indices wrap modulo `M`, so any cyclically consecutive
/// run of rows and columns is reachable.
pub fn dft_submatrix(
    m: usize,
    p: usize,
    row_offset: usize,
    col_offset: usize,
) -> Result<ComplexMatrix> {
    if p == 0 || m == 0 || m % p != 0 {
        return Err(invalid(format!("p = {p} does not divide M = {m}")));
    }
    dft_block(m, m / p, row_offset, col_offset)
}

fn dft_block(m: usize, size: usize, row_offset: usize, col_offset: usize) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(invalid("DFT length must be positive"));
    }
    let scale = 1.0 / (m as f64).sqrt();
    Ok(ComplexMatrix::from_fn(size, size, |i, j| {
        let r = ((row_offset + i) % m) as i128;
        let c = ((col_offset + j) % m) as i128;
        unit_root(-(r * c), m as i128) * scale
    }))
}

/// Sampled exponentials `e_f[t] = exp(2 pi j f t)`, `t = 0..n`.
pub fn sampled_exponential(n: usize, f: f64) -> Vec<Complex64> {
    (0..n)
        .map(|t| Complex64::from_polar(1.0, 2.0 * PI * f * t as f64))
        .collect()
}

/// Partial DFT with the `2 floor(nW) + 1` lowest frequencies as columns,
/// ordered `k = -floor(nW) ..= floor(nW)`, each column `e_{k/n} / sqrt(n)`.
pub fn build_partial_fourier(n: usize, w: f64) -> Result<ComplexMatrix> {
    check_bandwidth(w)?;
    if n == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let half = (n as f64 * w).floor() as i64;
    let cols = 2 * half as usize + 1;
    if cols > n {
        return Err(invalid(format!("2 floor(nW) + 1 = {cols} exceeds n = {n}")));
    }
    let scale = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, cols, |t, c| {
        let freq = c as i64 - half;
        unit_root(freq as i128 * t as i128, n as i128) * scale
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(m: usize, n: usize, k: usize) -> ProlateParams {
        ProlateParams::new(m, n, k).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ProlateParams::new(8, 9, 1).is_err());
        assert!(ProlateParams::new(8, 0, 1).is_err());
        assert!(ProlateParams::new(8, 4, 4).is_err());
        assert!(ProlateParams::new(9, 4, 4).is_err());
        let p = params(10, 4, 4);
        assert!(p.w() < 0.5);
        assert_eq!(p.floor_nw(), 1);
    }

    #[test]
    fn dirichlet_diagonal_is_limit() {
        let p = params(1024, 256, 128);
        assert_eq!(dirichlet_entry(&p, 0).unwrap(), 257.0 / 1024.0);
    }

    #[test]
    fn dirichlet_quarter_period() {
        let p = params(4, 4, 1);
        assert_relative_eq!(dirichlet_entry(&p, 2).unwrap(), -0.25, epsilon = 1e-16);
        assert_relative_eq!(dirichlet_entry(&p, -2).unwrap(), -0.25, epsilon = 1e-16);
    }

    #[test]
    fn dirichlet_against_extended_precision() {
        // mpmath, 50 digits: sin(2*pi*257/2048) / (1024*sin(pi/1024))
        let p = params(1024, 256, 128);
        assert_relative_eq!(
            dirichlet_entry(&p, 1).unwrap(),
            0.225_768_906_827_611_06,
            max_relative = 1e-15
        );
    }

    #[test]
    fn dirichlet_rejects_full_period() {
        let p = params(16, 8, 2);
        assert!(dirichlet_entry(&p, 16).is_err());
        assert!(dirichlet_entry(&p, -16).is_err());
        assert!(dirichlet_entry(&p, 15).is_ok());
    }

    #[test]
    fn periodic_prolate_small_cases() {
        let one = build_periodic_prolate(&params(7, 1, 2));
        assert_eq!(one.symbol(), &[5.0 / 7.0]);

        let full = build_periodic_prolate(&params(12, 12, 3));
        assert_relative_eq!(full.trace(), 7.0, max_relative = 4.0 * f64::EPSILON);
        assert_relative_eq!(full.to_dense().trace(), 7.0, epsilon = 1e-14);

        // W = 3/16. mpmath: sin(2*pi*(3/16)*3) / (8*sin(3*pi/8))
        let b = build_periodic_prolate(&params(8, 4, 1)).to_dense();
        assert_relative_eq!(b[(0, 3)], -0.051_776_695_296_636_881, max_relative = 1e-15);
        assert_eq!(b[(0, 3)], b[(3, 0)]);
    }

    #[test]
    fn principal_submatrix_of_full() {
        let full = build_periodic_prolate(&params(20, 20, 4)).to_dense();
        let lead = build_periodic_prolate(&params(20, 7, 4)).to_dense();
        for i in 0..7 {
            for j in 0..7 {
                assert_eq!(lead[(i, j)], full[(i, j)]);
            }
        }
    }

    #[test]
    fn sinc_prolate_entries() {
        let s = build_sinc_prolate(4, 0.25).unwrap();
        assert_eq!(s.symbol()[0], 0.5);
        assert_relative_eq!(s.symbol()[1], 1.0 / PI, epsilon = 1e-16);
        let s = build_sinc_prolate(200, 0.123).unwrap();
        for (k, v) in s.symbol().iter().enumerate().skip(1) {
            assert!(v.abs() <= 1.0 / (PI * k as f64));
        }
        assert!(build_sinc_prolate(4, 0.5).is_err());
        assert!(build_sinc_prolate(4, 0.0).is_err());
    }

    #[test]
    fn dft_small_cases() {
        let f1 = build_dft(1).unwrap();
        assert_eq!(f1[(0, 0)], Complex64::new(1.0, 0.0));

        let f2 = build_dft(2).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert!((f2[(1, 1)] - Complex64::new(-h, 0.0)).norm() < 1e-16);
        assert!((f2[(0, 1)] - Complex64::new(h, 0.0)).norm() < 1e-16);

        let f4 = build_dft(4).unwrap();
        let expect = [(0.5, 0.0), (0.0, -0.5), (-0.5, 0.0), (0.0, 0.5)];
        for (i, &(re, im)) in expect.iter().enumerate() {
            assert!((f4[(i, 1)] - Complex64::new(re, im)).norm() < 1e-16);
        }
    }

    #[test]
    fn dft_is_unitary() {
        for m in [1, 2, 3, 16, 45] {
            let f = build_dft(m).unwrap();
            let g = f.matmul(&f.adjoint()).unwrap();
            let eye = ComplexMatrix::from_fn(m, m, |i, j| {
                Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
            });
            assert!(g.max_abs_diff(&eye).unwrap() < 1e-12, "M = {m}");
        }
    }

    #[test]
    fn dft_submatrix_blocks() {
        let s = dft_submatrix(4, 2, 0, 0).unwrap();
        assert!((s[(0, 0)] - Complex64::new(0.5, 0.0)).norm() < 1e-16);
        assert!((s[(1, 1)] - Complex64::new(0.0, -0.5)).norm() < 1e-16);
        assert!(dft_submatrix(12, 5, 0, 0).is_err());

        let f = build_dft(12).unwrap();
        let wrapped = dft_submatrix(12, 3, 10, 11).unwrap();
        assert_eq!(wrapped[(3, 2)], f[(1, 1)]);
        assert_eq!(wrapped[(0, 0)], f[(10, 11)]);
    }

    #[test]
    fn partial_fourier_shape() {
        let f = build_partial_fourier(8, 0.25).unwrap();
        assert_eq!(f.cols(), 5);
        // First column is frequency -2/8.
        let e = sampled_exponential(8, -2.0 / 8.0);
        for t in 0..8 {
            assert!((f[(t, 0)] - e[t] / 8f64.sqrt()).norm() < 1e-15);
        }

        let dc = build_partial_fourier(10, 0.05).unwrap();
        assert_eq!(dc.cols(), 1);
        for t in 0..10 {
            assert!((dc[(t, 0)] - Complex64::new(1.0 / 10f64.sqrt(), 0.0)).norm() < 1e-16);
        }

        let g = build_partial_fourier(33, 0.2).unwrap().gram();
        let eye = ComplexMatrix::from_fn(g.rows(), g.cols(), |i, j| {
            Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)
        });
        assert!(g.max_abs_diff(&eye).unwrap() < 1e-12);
    }
}
