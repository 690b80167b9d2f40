//! Low-rank plus small-tail split between the periodic and the classical
//! prolate matrix.
//!
//! Expanding `1/sin(x) - 1/x` as a power series turns every entry of
//! `[B_{M,W}]_N - Bbar_{N,W}` into `sum_{r>=1} t(r; m-n)` with
//!
//! ```text
//! t(r; k) = 2/(M pi) * eta(2r) * (k/M)^(2r-1) * sin(2 pi W k)
//! ```
//!
//! where `eta` is the Dirichlet eta function. Keeping the first `R` terms
//! gives `L2 = U D V^T - V D U^T` with `U, V` of width `2R`, hence rank at
//! most `4R`; the remainder `E2` is bounded entrywise, and through
//! Gershgorin in operator norm.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bounds::{bound_r, check_epsilon};
use crate::eigen::eigh_householder_ql;
use crate::error::{invalid, Error, Result};
use crate::kernels::{
    build_partial_fourier, build_periodic_prolate, build_sinc_prolate, sin_pi_ratio, ProlateParams,
};
use crate::linalg::DenseMatrix;

/// Largest even argument accepted by [`eta_even`].
pub const ETA_MAX_ARG: u32 = 200;

/// Truncation error target for the eta series.
const ETA_TOL: f64 = 1e-17;

/// Truncation orders above this are rejected; they only arise when `N/M`
/// is within a few percent of one.
pub const MAX_ORDER: usize = 4096;

/// Relative cutoff below which a singular value of `L2` counts as zero.
pub const RANK_TOL: f64 = 1e-10;

/// Dirichlet eta `eta(s) = sum_{n>=1} (-1)^(n-1) / n^s` for even `s`.
///
/// Evaluated by Borwein's acceleration of the alternating series with
/// enough terms that the truncation error is below `1e-17`.
pub fn eta_even(s: u32) -> Result<f64> {
    if s < 2 || s % 2 != 0 || s > ETA_MAX_ARG {
        return Err(invalid(format!(
            "eta argument must be even in [2, {ETA_MAX_ARG}], got {s}"
        )));
    }
    Ok(eta_borwein(s as f64))
}

/// Borwein, "An efficient algorithm for the Riemann zeta function" (1991),
/// algorithm 2. Error at most `3 / (3 + sqrt 8)^n` for real `s >= 1`.
fn eta_borwein(s: f64) -> f64 {
    let growth = 3.0 + 8f64.sqrt();
    let mut n = 1usize;
    while 3.0 / growth.powi(n as i32) >= ETA_TOL {
        n += 1;
    }
    // d_k = sum_{i<=k} a_i with a_0 = 1,
    // a_i = a_{i-1} * 4 (n+i-1)(n-i+1) / ((2i)(2i-1)).
    let mut d = Vec::with_capacity(n + 1);
    let mut a = 1.0f64;
    let mut acc = 1.0f64;
    d.push(acc);
    for i in 1..=n {
        let fi = i as f64;
        let fnn = n as f64;
        a *= 4.0 * (fnn + fi - 1.0) * (fnn - fi + 1.0) / ((2.0 * fi) * (2.0 * fi - 1.0));
        acc += a;
        d.push(acc);
    }
    let dn = d[n];
    let mut sum = 0.0;
    for k in (0..n).rev() {
        let term = (dn - d[k]) / ((k + 1) as f64).powf(s);
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / dn
}

/// `eta(2r)` for `r = 1..=max_r`.
///
/// Beyond `s = 200`, `eta(s) = 1 - 2^-s + ...` equals one in double
/// precision and is stored as exactly `1.0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EtaTable {
    values: Vec<f64>,
}

impl EtaTable {
    pub fn new(max_r: usize) -> Self {
        let values = (1..=max_r)
            .map(|r| {
                let s = 2 * r;
                if s as u64 > ETA_MAX_ARG as u64 {
                    1.0
                } else {
                    eta_borwein(s as f64)
                }
            })
            .collect();
        Self { values }
    }

    pub fn max_r(&self) -> usize {
        self.values.len()
    }

    /// `eta(2r)`, `1 <= r <= max_r`.
    pub fn get(&self, r: usize) -> Option<f64> {
        r.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `(s, eta(s))` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| (2 * (i as u32 + 1), v))
    }
}

/// Coefficient `2/(M pi) * eta(2r)` shared by `t(r; k)` and `D`.
fn series_coefficient(m: usize, eta: f64) -> f64 {
    2.0 / (m as f64 * PI) * eta
}

/// The `r`-th term `t(r; k)` of the series for the entry difference at
/// offset `k`.
pub fn tail_term(params: &ProlateParams, r: usize, k: i64) -> Result<f64> {
    if r == 0 {
        return Err(invalid("series order r starts at 1"));
    }
    let m = params.m();
    if k.unsigned_abs() >= m as u64 {
        return Err(invalid(format!("offset {k} outside (-{m}, {m})")));
    }
    let s = 2 * r as u32;
    let eta = if s > ETA_MAX_ARG { 1.0 } else { eta_even(s)? };
    Ok(term_with_eta(params, eta, r, k))
}

fn term_with_eta(params: &ProlateParams, eta: f64, r: usize, k: i64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    let m = params.m();
    let x = k as f64 / m as f64;
    let osc = sin_pi_ratio(params.band() as i128 * k as i128, m as i128);
    series_coefficient(m, eta) * x.powi(2 * r as i32 - 1) * osc
}

/// Truncation order exactly as printed alongside the tail bound:
/// `ceil(max(-ln(8 pi ((M/N)^2 - 1) eps) / (2 ln(M/N)), 0))`.
///
/// This order does not by itself achieve the entrywise bound
/// `eps / (16 N)`; see [`certified_order`].
pub fn choose_r(params: &ProlateParams, epsilon: f64) -> Result<usize> {
    let raw = choose_r_raw(params, epsilon)?;
    Ok(raw.ceil() as usize)
}

fn choose_r_raw(params: &ProlateParams, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    let (ratio, _) = ratio(params)?;
    let value = -(8.0 * PI * (ratio * ratio - 1.0) * epsilon).ln() / (2.0 * ratio.ln());
    Ok(value.max(0.0))
}

fn ratio(params: &ProlateParams) -> Result<(f64, f64)> {
    if params.n() >= params.m() {
        return Err(invalid(format!(
            "decomposition needs N < M, got N = {}, M = {}",
            params.n(),
            params.m()
        )));
    }
    let ratio = params.m() as f64 / params.n() as f64;
    Ok((ratio, 1.0 / ratio))
}

/// Entrywise bound on the tail after `R` terms:
/// `|E2[m, n]| <= 2/(pi N) * (N/M)^(2R) / ((M/N)^2 - 1)`.
pub fn entry_tail_bound(params: &ProlateParams, order: usize) -> Result<f64> {
    let (ratio, inv) = ratio(params)?;
    Ok(2.0 / (PI * params.n() as f64) * inv.powi(2 * order as i32) / (ratio * ratio - 1.0))
}

/// Smallest order `R` whose entrywise tail bound is at most `eps / (16 N)`,
/// so the Gershgorin row-sum bound on `E2` is at most `eps / 16`.
pub fn certified_order(params: &ProlateParams, epsilon: f64) -> Result<usize> {
    check_epsilon(epsilon)?;
    let target = epsilon / (16.0 * params.n() as f64);
    for order in 0..=MAX_ORDER {
        if entry_tail_bound(params, order)? <= target {
            return Ok(order);
        }
    }
    Err(invalid(format!(
        "N/M = {}/{} needs a truncation order above {MAX_ORDER}",
        params.n(),
        params.m()
    )))
}

/// The truncated part `L2` together with its tail certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct LowRankParts {
    pub params: ProlateParams,
    pub epsilon: f64,
    /// Truncation order actually used.
    pub r: usize,
    /// Order from [`choose_r`], kept for reporting.
    pub r_printed: usize,
    /// First column of the symmetric Toeplitz `L2`.
    pub l2_symbol: Vec<f64>,
    pub l2: DenseMatrix,
    /// Bound on `max |E2[m, n]|`.
    pub entry_bound: f64,
    /// Gershgorin bound `N * entry_bound` on `||E2||`.
    pub tail_bound: f64,
    pub eta: EtaTable,
}

/// The factors of `L2 = U D V^T - V D U^T`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factors {
    /// `2R x 2R`, nonzero only on the anti-diagonals `i + j = 2r - 1`.
    pub d: DenseMatrix,
    /// `U[n, i] = (n/M)^i sin(2 pi W n)`.
    pub u: DenseMatrix,
    /// `V[n, i] = (n/M)^i cos(2 pi W n)`.
    pub v: DenseMatrix,
}

/// Builds `L2` entrywise from the first `R` series terms, with `R` from
/// [`certified_order`].
pub fn build_parts(params: &ProlateParams, epsilon: f64) -> Result<LowRankParts> {
    let r = certified_order(params, epsilon)?;
    build_parts_with_order(params, epsilon, r)
}

/// As [`build_parts`] with an explicit truncation order.
pub fn build_parts_with_order(
    params: &ProlateParams,
    epsilon: f64,
    r: usize,
) -> Result<LowRankParts> {
    check_epsilon(epsilon)?;
    if r > MAX_ORDER {
        return Err(invalid(format!("order {r} above {MAX_ORDER}")));
    }
    let r_printed = choose_r(params, epsilon)?;
    let entry_bound = entry_tail_bound(params, r)?;
    let eta = EtaTable::new(r);
    let n = params.n();
    let l2_symbol: Vec<f64> = (0..n as i64)
        .map(|k| {
            // Smallest terms first.
            (1..=r)
                .rev()
                .map(|order| term_with_eta(params, eta.get(order).unwrap_or(1.0), order, k))
                .sum()
        })
        .collect();
    let l2 = DenseMatrix::from_fn(n, n, |i, j| l2_symbol[i.abs_diff(j)]);
    Ok(LowRankParts {
        params: *params,
        epsilon,
        r,
        r_printed,
        l2_symbol,
        l2,
        entry_bound,
        tail_bound: n as f64 * entry_bound,
        eta,
    })
}

/// Measured size of `E2 = ([B_{M,W}]_N - Bbar_{N,W}) - L2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailResidual {
    pub max_entry: f64,
    pub max_row_sum: f64,
}

/// Numerical rank evidence for `L2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankCertificate {
    /// Singular values above `RANK_TOL * sigma_max`.
    pub significant: usize,
    /// `sigma_{4R} / sigma_0` (0-based), zero when `4R >= N` or `L2 = 0`.
    pub ratio_past_4r: f64,
    pub certified: bool,
}

impl LowRankParts {
    pub fn factors(&self) -> Factors {
        let n = self.params.n();
        let m = self.params.m() as f64;
        let width = 2 * self.r;
        let band = self.params.band() as i128;
        let mi = self.params.m() as i128;
        let mut u = DenseMatrix::zeros(n, width);
        let mut v = DenseMatrix::zeros(n, width);
        for row in 0..n {
            let s = sin_pi_ratio(band * row as i128, mi);
            // cos(x) = sin(x + pi/2); shift by M/2 in units of pi/M.
            let c = cos_pi_ratio(band * row as i128, mi);
            let base = row as f64 / m;
            let mut pow = 1.0;
            for i in 0..width {
                u[(row, i)] = pow * s;
                v[(row, i)] = pow * c;
                pow *= base;
            }
        }
        let mut d = DenseMatrix::zeros(width, width);
        for order in 1..=self.r {
            let c = series_coefficient(self.params.m(), self.eta.get(order).unwrap_or(1.0));
            let deg = 2 * order - 1;
            let mut binom = 1.0f64;
            for p in 0..=deg {
                let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
                d[(deg - p, p)] = c * sign * binom;
                binom = binom * (deg - p) as f64 / (p + 1) as f64;
            }
        }
        Factors { d, u, v }
    }

    /// `U D V^T - V D U^T` from the factors.
    pub fn reconstruct(&self) -> DenseMatrix {
        let f = self.factors();
        let n = self.params.n();
        if self.r == 0 {
            return DenseMatrix::zeros(n, n);
        }
        let udv =
            f.u.matmul(&f.d)
                .and_then(|ud| ud.matmul(&f.v.transpose()))
                .expect("factor shapes agree");
        let vdu =
            f.v.matmul(&f.d)
                .and_then(|vd| vd.matmul(&f.u.transpose()))
                .expect("factor shapes agree");
        udv.sub(&vdu).expect("same shape")
    }

    /// Entries of `E2` by symbol offset.
    pub fn tail_symbol(&self) -> Vec<f64> {
        let dirichlet = build_periodic_prolate(&self.params);
        let sinc = build_sinc_prolate(self.params.n(), self.params.w())
            .expect("validated params have 0 < W < 1/2");
        dirichlet
            .symbol()
            .iter()
            .zip(sinc.symbol())
            .zip(&self.l2_symbol)
            .map(|((b, s), l)| (b - s) - l)
            .collect()
    }

    pub fn residual(&self) -> TailResidual {
        let e2 = self.tail_symbol();
        let n = e2.len();
        let abs: Vec<f64> = e2.iter().map(|v| v.abs()).collect();
        let max_entry = abs.iter().copied().fold(0.0, f64::max);
        // Row m sums |e2[|m - j|]| over j; prefix sums make this O(N).
        let mut prefix = vec![0.0; n + 1];
        for k in 0..n {
            prefix[k + 1] = prefix[k] + abs[k];
        }
        let max_row_sum = (0..n)
            .map(|m| prefix[m + 1] + prefix[n - m] - abs[0])
            .fold(0.0, f64::max);
        TailResidual {
            max_entry,
            max_row_sum,
        }
    }

    /// Singular values of the symmetric `L2` are the absolute eigenvalues.
    pub fn rank_certificate(&self) -> Result<RankCertificate> {
        let spectrum = eigh_householder_ql(&self.l2, false)?;
        let mut sv: Vec<f64> = spectrum.values.iter().map(|v| v.abs()).collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        let top = sv.first().copied().unwrap_or(0.0);
        if top == 0.0 {
            return Ok(RankCertificate {
                significant: 0,
                ratio_past_4r: 0.0,
                certified: true,
            });
        }
        let significant = sv.iter().filter(|&&s| s > RANK_TOL * top).count();
        let ratio_past_4r = sv.get(4 * self.r).map_or(0.0, |s| s / top);
        Ok(RankCertificate {
            significant,
            ratio_past_4r,
            certified: significant <= 4 * self.r && ratio_past_4r < RANK_TOL,
        })
    }
}

fn cos_pi_ratio(num: i128, den: i128) -> f64 {
    // cos(pi a / b) = sin(pi (2a + b) / (2b))
    sin_pi_ratio(2 * num + den, 2 * den)
}

/// Everything the decomposition certifies for one `(params, eps)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub params: ProlateParams,
    pub epsilon: f64,
    pub r: usize,
    pub r_printed: usize,
    pub rank: RankCertificate,
    pub entry_bound: f64,
    pub tail_bound: f64,
    pub residual: TailResidual,
    /// Residual within the bounds and the bounds within `eps/16`,
    /// `eps/(16N)`.
    pub tail_ok: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.rank.certified && self.tail_ok
    }
}

pub fn certify_decomposition(params: &ProlateParams, epsilon: f64) -> Result<DecompositionReport> {
    let parts = build_parts(params, epsilon)?;
    let residual = parts.residual();
    let rank = parts.rank_certificate()?;
    let n = params.n() as f64;
    let tail_ok = residual.max_entry <= parts.entry_bound
        && residual.max_row_sum <= parts.tail_bound
        && parts.tail_bound <= epsilon / 16.0
        && residual.max_entry <= epsilon / (16.0 * n);
    Ok(DecompositionReport {
        params: *params,
        epsilon,
        r: parts.r,
        r_printed: parts.r_printed,
        rank,
        entry_bound: parts.entry_bound,
        tail_bound: parts.tail_bound,
        residual,
        tail_ok,
    })
}

/// Count of eigenvalues of `Bbar_{n,W} - F_{n,W} F_{n,W}^*` larger than `eps`
/// in magnitude, with the rank bound `(4/pi^2 ln(8n) + 6) ln(15/eps)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveRank {
    pub count: usize,
    pub bound: f64,
}

impl EffectiveRank {
    pub fn holds(&self) -> bool {
        self.count as f64 <= self.bound
    }
}

pub fn verify_lemma1_numeric(n: usize, w: f64, epsilon: f64) -> Result<EffectiveRank> {
    check_epsilon(epsilon)?;
    let sinc = build_sinc_prolate(n, w)?.to_dense();
    let diff = sinc.sub(&low_frequency_projector(n, w)?)?;
    let count = count_above(&diff, epsilon)?;
    let bound = (4.0 / (PI * PI) * (8.0 * n as f64).ln() + 6.0) * (15.0 / epsilon).ln();
    Ok(EffectiveRank { count, bound })
}

/// Same count for `[B_{M,W}]_N - F_{N,W} F_{N,W}^*`, bounded by `R(N, M, eps)`.
pub fn verify_combined_numeric(params: &ProlateParams, epsilon: f64) -> Result<EffectiveRank> {
    let b = build_periodic_prolate(params).to_dense();
    let diff = b.sub(&low_frequency_projector(params.n(), params.w())?)?;
    let count = count_above(&diff, epsilon)?;
    let bound = bound_r(params.n(), params.m(), epsilon)?;
    Ok(EffectiveRank { count, bound })
}

/// `F_{n,W} F_{n,W}^*`, which is real.
fn low_frequency_projector(n: usize, w: f64) -> Result<DenseMatrix> {
    let f = build_partial_fourier(n, w)?;
    let proj = f.matmul(&f.adjoint())?;
    let imag = proj.max_abs_imag();
    if imag > 1e-12 {
        return Err(Error::Dimension(format!(
            "projector has imaginary part {imag:e}"
        )));
    }
    Ok(proj.real_part())
}

fn count_above(a: &DenseMatrix, epsilon: f64) -> Result<usize> {
    let spectrum = eigh_householder_ql(a, false)?;
    Ok(spectrum.values.iter().filter(|v| v.abs() > epsilon).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Direct alternating series, summed from the tail so small terms are
    /// not swamped. The error is below the first omitted term.
    fn eta_direct(s: u32, terms: usize) -> f64 {
        (1..=terms)
            .rev()
            .map(|n| {
                let t = (n as f64).powi(-(s as i32));
                if n % 2 == 1 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    }

    #[test]
    fn eta_closed_forms() {
        assert_relative_eq!(eta_even(2).unwrap(), PI * PI / 12.0, epsilon = 1e-14);
        assert_relative_eq!(
            eta_even(4).unwrap(),
            7.0 * PI.powi(4) / 720.0,
            epsilon = 1e-14
        );
        // mpmath altzeta, 40 digits.
        assert_relative_eq!(
            eta_even(6).unwrap(),
            0.985_551_091_297_435_104,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            eta_even(12).unwrap(),
            0.999_757_685_143_858_191,
            epsilon = 1e-15
        );
        assert_relative_eq!(eta_even(40).unwrap(), 1.0 - 2f64.powi(-40), epsilon = 1e-14);
        assert_relative_eq!(
            eta_even(40).unwrap(),
            0.999_999_999_999_090_505,
            epsilon = 1e-16
        );
    }

    #[test]
    fn eta_matches_direct_series() {
        for s in [4u32, 6, 8, 10, 20, 50] {
            // n^-s < 1e-17 once n > 1e17^(1/s).
            let terms = (1e17f64.powf(1.0 / s as f64)).ceil() as usize + 1;
            assert_relative_eq!(eta_even(s).unwrap(), eta_direct(s, terms), epsilon = 2e-16);
        }
    }

    #[test]
    fn eta_rejects_bad_arguments() {
        for s in [0, 1, 3, 201, 202] {
            assert!(eta_even(s).is_err(), "s = {s}");
        }
        assert!(eta_even(200).is_ok());
    }

    #[test]
    fn eta_table_monotone_and_bounded() {
        let t = EtaTable::new(120);
        let mut prev = 0.0;
        for (s, v) in t.iter() {
            assert!(v > 0.0 && v <= 1.0, "eta({s}) = {v}");
            assert!(v >= prev);
            prev = v;
        }
        assert_eq!(t.get(0), None);
        assert_eq!(t.get(121), None);
        assert_eq!(t.get(120), Some(1.0));
    }

    fn params() -> ProlateParams {
        ProlateParams::new(1024, 256, 128).unwrap()
    }

    #[test]
    fn tail_term_basics() {
        let p = params();
        for r in 1..6 {
            assert_eq!(tail_term(&p, r, 0).unwrap(), 0.0);
            for k in [1i64, 17, 100, 255] {
                let bound = 2.0 / (PI * 1024.0) * (256.0f64 / 1024.0).powi(2 * r as i32 - 1);
                assert!(tail_term(&p, r, k).unwrap().abs() <= bound);
                assert_eq!(tail_term(&p, r, k).unwrap(), tail_term(&p, r, -k).unwrap());
            }
        }
        assert!(tail_term(&p, 0, 1).is_err());
        assert!(tail_term(&p, 1, 1024).is_err());
    }

    #[test]
    fn series_sums_to_kernel_difference() {
        // mpmath, 40 digits: Dirichlet minus sinc entry at offset 100.
        let p = params();
        let mut sum = 0.0;
        for r in 1.. {
            let t = tail_term(&p, r, 100).unwrap();
            sum += t;
            if t.abs() < 1e-18 {
                break;
            }
        }
        assert_relative_eq!(sum, -1.524_770_645_368_860_15e-5, epsilon = 1e-13);
    }

    #[test]
    fn printed_order_values() {
        // mpmath: the unclamped value is 0.351849389895312429
        let p = params();
        assert_relative_eq!(
            choose_r_raw(&p, 1e-3).unwrap(),
            0.351_849_389_895_312_43,
            max_relative = 1e-14
        );
        assert_eq!(choose_r(&p, 1e-3).unwrap(), 1);
        assert_eq!(choose_r(&p, 0.2).unwrap(), 0);
        let mut prev = usize::MAX;
        for eps in [1e-12, 1e-9, 1e-6, 1e-3, 0.1, 0.4] {
            let r = choose_r(&p, eps).unwrap();
            assert!(r <= prev);
            prev = r;
        }
        let square = ProlateParams::new(64, 64, 3).unwrap();
        assert!(choose_r(&square, 1e-3).is_err());
    }

    #[test]
    fn certified_order_meets_target() {
        let p = params();
        for eps in [1e-3, 1e-6, 1e-9, 0.4] {
            let r = certified_order(&p, eps).unwrap();
            let target = eps / (16.0 * 256.0);
            assert!(entry_tail_bound(&p, r).unwrap() <= target);
            if r > 0 {
                assert!(entry_tail_bound(&p, r - 1).unwrap() > target);
            }
            assert!(r >= choose_r(&p, eps).unwrap());
        }
    }

    #[test]
    fn zero_order_parts() {
        // M/N = 64 and a loose eps leave nothing to subtract.
        let p = ProlateParams::new(1024, 16, 40).unwrap();
        let parts = build_parts(&p, 0.4).unwrap();
        assert_eq!(parts.r, 0);
        assert_eq!(parts.l2.max_abs(), 0.0);
        let res = parts.residual();
        assert!(res.max_row_sum <= parts.tail_bound);
        assert!(parts.tail_bound <= 0.4 / 16.0);
        assert!(parts.rank_certificate().unwrap().certified);
        assert!(parts.factors().d.rows() == 0);
    }

    #[test]
    fn product_form_matches_entrywise() {
        for (m, n, k, eps) in [
            (1024, 256, 128, 1e-6),
            (64, 16, 8, 1e-3),
            (200, 50, 30, 1e-9),
        ] {
            let p = ProlateParams::new(m, n, k).unwrap();
            let parts = build_parts(&p, eps).unwrap();
            assert!(parts.r <= 8, "r = {}", parts.r);
            let diff = parts.reconstruct().sub(&parts.l2).unwrap().max_abs();
            assert!(diff <= 1e-13, "{m} {n} {k}: {diff:e}");
        }
    }

    #[test]
    fn d_is_anti_triangular() {
        let p = ProlateParams::new(100, 40, 10).unwrap();
        let parts = build_parts_with_order(&p, 1e-3, 3).unwrap();
        let d = parts.factors().d;
        for i in 0..6 {
            for j in 0..6 {
                if (i + j) % 2 == 0 || i + j > 5 {
                    assert_eq!(d[(i, j)], 0.0, "D[{i},{j}]");
                } else {
                    assert!(d[(i, j)] != 0.0);
                }
            }
        }
        // r = 2, p = 1: -3 * 2/(M pi) * eta(4)
        let expect = -3.0 * 2.0 / (100.0 * PI) * eta_even(4).unwrap();
        assert_relative_eq!(d[(2, 1)], expect, max_relative = 1e-15);
    }

    #[test]
    fn lemma1_tiny_square_case() {
        // n = 5, W = 0.45: 2 floor(2.25) + 1 = 5 = n, so F F^* = I.
        let check = verify_lemma1_numeric(5, 0.45, 1e-3).unwrap();
        let direct = build_sinc_prolate(5, 0.45)
            .unwrap()
            .to_dense()
            .sub(&DenseMatrix::identity(5))
            .unwrap();
        let spectrum = eigh_householder_ql(&direct, false).unwrap();
        let count = spectrum.values.iter().filter(|v| v.abs() > 1e-3).count();
        assert_eq!(check.count, count);
    }

    #[test]
    fn lemma1_count_monotone_in_eps() {
        let mut prev = usize::MAX;
        for eps in [1e-12, 1e-9, 1e-6, 1e-3, 0.1] {
            let c = verify_lemma1_numeric(64, 0.2, eps).unwrap();
            assert!(c.count <= prev);
            assert!(c.holds());
            prev = c.count;
        }
    }
}
