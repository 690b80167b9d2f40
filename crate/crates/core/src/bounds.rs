//! The transition-band bound `R(N, M, eps)` and certificates that computed
//! spectra respect it.
//!
//! For `[B_{M,W}]_N` with eigenvalues `lambda_0 >= ... >= lambda_{N-1}`:
//!
//! * `lambda_{2 floor(NW) - R} >= 1 - eps`,
//! * `lambda_{2 floor(NW) + R + 1} <= eps`,
//! * `#{l : eps < lambda_l < 1 - eps} <= 2 R`.
//!
//! `R` is real; eigenvalue indices use `ceil(R)`, and an index that falls
//! outside `[0, N)` makes its check vacuously true. The same checks apply to
//! the singular values of an `L x L` DFT block with thresholds `sqrt(eps)`
//! and `sqrt(1 - eps)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::eigen::{eigh_householder_ql, singular_values, Spectrum};
use crate::error::{invalid, Result};
use crate::kernels::{build_periodic_prolate, dft_submatrix, ProlateParams};

/// `R(N, M, eps) = (4/pi^2 ln(8N) + 6) ln(16/eps)
///               + 2 max(-ln(8 pi ((M/N)^2 - 1) eps) / ln(M/N), 0)`.
pub fn bound_r(n: usize, m: usize, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    if n == 0 || n >= m {
        return Err(invalid(format!(
            "bound needs 0 < N < M, got N = {n}, M = {m}"
        )));
    }
    let ratio = m as f64 / n as f64;
    let lemma_rank = (4.0 / (PI * PI) * (8.0 * n as f64).ln() + 6.0) * (16.0 / epsilon).ln();
    let tail = -(8.0 * PI * (ratio * ratio - 1.0) * epsilon).ln() / ratio.ln();
    Ok(lemma_rank + 2.0 * tail.max(0.0))
}

pub(crate) fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(invalid(format!("epsilon = {epsilon} outside (0, 1/2)")));
    }
    Ok(())
}

/// Number of values strictly inside `(lo, hi)`.
pub fn count_strictly_between(values: &[f64], lo: f64, hi: f64) -> usize {
    values.iter().filter(|&&v| v > lo && v < hi).count()
}

/// `#{l : eps < lambda_l < 1 - eps}`.
pub fn transition_width(spectrum: &Spectrum, epsilon: f64) -> usize {
    count_strictly_between(&spectrum.values, epsilon, 1.0 - epsilon)
}

/// Which matrix a report was computed for.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Setting {
    Prolate {
        params: ProlateParams,
    },
    DftBlock {
        m: usize,
        p: usize,
        row_offset: usize,
        col_offset: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionReport {
    pub setting: Setting,
    pub epsilon: f64,
    /// Size of the transition band.
    pub width: usize,
    /// Real-valued `R`.
    pub r: f64,
    /// `2 R`, the bound on `width`.
    pub bound: f64,
    /// Index checked against the near-one threshold; `None` when vacuous.
    pub lower_index: Option<usize>,
    /// Index checked against the near-zero threshold; `None` when vacuous.
    pub upper_index: Option<usize>,
    pub lower_index_ok: bool,
    pub upper_index_ok: bool,
    pub width_ok: bool,
    /// Where the spectrum is expected to drop from one to zero.
    pub cluster_point: f64,
}

impl TransitionReport {
    pub fn passed(&self) -> bool {
        self.lower_index_ok && self.upper_index_ok && self.width_ok
    }
}

/// Runs the three checks on `values` (sorted descending) around
/// `center = 2 floor(NW)` with thresholds `high` (near one) and `low`
/// (near zero).
fn verdicts(values: &[f64], center: usize, r: f64, high: f64, low: f64) -> Verdicts {
    let r_ceil = if r.is_finite() {
        r.ceil() as usize
    } else {
        usize::MAX
    };
    let lower_index = center.checked_sub(r_ceil);
    let upper_index = center
        .checked_add(r_ceil)
        .and_then(|i| i.checked_add(1))
        .filter(|&i| i < values.len());
    let lower_index = lower_index.filter(|&i| i < values.len());
    let width = count_strictly_between(values, low, high);
    Verdicts {
        width,
        lower_index,
        upper_index,
        lower_ok: lower_index.map_or(true, |i| values[i] >= high),
        upper_ok: upper_index.map_or(true, |i| values[i] <= low),
        width_ok: (width as f64) <= 2.0 * r,
    }
}

struct Verdicts {
    width: usize,
    lower_index: Option<usize>,
    upper_index: Option<usize>,
    lower_ok: bool,
    upper_ok: bool,
    width_ok: bool,
}

/// Computes the spectrum of `[B_{M,W}]_N` and certifies it.
pub fn certify_theorem1(params: &ProlateParams, epsilon: f64) -> Result<TransitionReport> {
    check_epsilon(epsilon)?;
    let spectrum = prolate_spectrum(params)?;
    certify_theorem1_on(params, &spectrum, epsilon)
}

/// Eigenvalues of `[B_{M,W}]_N`, descending.
pub fn prolate_spectrum(params: &ProlateParams) -> Result<Spectrum> {
    eigh_householder_ql(&build_periodic_prolate(params).to_dense(), false)
}

/// Certifies an already computed spectrum of `[B_{M,W}]_N`, so one
/// eigensolve can serve several `epsilon`.
pub fn certify_theorem1_on(
    params: &ProlateParams,
    spectrum: &Spectrum,
    epsilon: f64,
) -> Result<TransitionReport> {
    check_epsilon(epsilon)?;
    if spectrum.len() != params.n() {
        return Err(invalid(format!(
            "spectrum has {} values for N = {}",
            spectrum.len(),
            params.n()
        )));
    }
    let r = bound_r(params.n(), params.m(), epsilon)?;
    let v = verdicts(
        &spectrum.values,
        2 * params.floor_nw(),
        r,
        1.0 - epsilon,
        epsilon,
    );
    Ok(TransitionReport {
        setting: Setting::Prolate { params: *params },
        epsilon,
        width: v.width,
        r,
        bound: 2.0 * r,
        lower_index: v.lower_index,
        upper_index: v.upper_index,
        lower_index_ok: v.lower_ok,
        upper_index_ok: v.upper_ok,
        width_ok: v.width_ok,
        cluster_point: params.cluster_point(),
    })
}

/// Singular values of the `M/p x M/p` DFT block at the given cyclic offsets.
///
/// Computed by bidiagonalization so that values near zero are accurate to
/// `~1e-15` absolutely and blocks at different offsets agree to that level.
pub fn dft_block_singular_values(
    m: usize,
    p: usize,
    row_offset: usize,
    col_offset: usize,
) -> Result<Vec<f64>> {
    singular_values(&dft_submatrix(m, p, row_offset, col_offset)?)
}

/// Certifies the singular values of a DFT block against `R(L, M, eps)`.
pub fn certify_corollary1(
    m: usize,
    p: usize,
    row_offset: usize,
    col_offset: usize,
    epsilon: f64,
) -> Result<TransitionReport> {
    check_epsilon(epsilon)?;
    let sv = dft_block_singular_values(m, p, row_offset, col_offset)?;
    certify_corollary1_on(m, p, row_offset, col_offset, &sv, epsilon)
}

/// As [`certify_corollary1`] for precomputed singular values (descending).
///
/// With `p = 1` the block is all of `F_M`; `R(M, M, eps)` is infinite and
/// both index checks are vacuous.
pub fn certify_corollary1_on(
    m: usize,
    p: usize,
    row_offset: usize,
    col_offset: usize,
    singular_values: &[f64],
    epsilon: f64,
) -> Result<TransitionReport> {
    check_epsilon(epsilon)?;
    if p == 0 || m % p != 0 {
        return Err(invalid(format!("p = {p} does not divide M = {m}")));
    }
    let l = m / p;
    if singular_values.len() != l {
        return Err(invalid(format!(
            "{} singular values for a block of size {l}",
            singular_values.len()
        )));
    }
    let r = if p == 1 {
        f64::INFINITY
    } else {
        bound_r(l, m, epsilon)?
    };
    // W = 1/(2p), so 2 floor(L W) = 2 floor(L / (2p)).
    let center = 2 * (l / (2 * p));
    let v = verdicts(
        singular_values,
        center,
        r,
        (1.0 - epsilon).sqrt(),
        epsilon.sqrt(),
    );
    Ok(TransitionReport {
        setting: Setting::DftBlock {
            m,
            p,
            row_offset,
            col_offset,
        },
        epsilon,
        width: v.width,
        r,
        bound: 2.0 * r,
        lower_index: v.lower_index,
        upper_index: v.upper_index,
        lower_index_ok: v.lower_ok,
        upper_index_ok: v.upper_ok,
        width_ok: v.width_ok,
        cluster_point: l as f64 / p as f64,
    })
}
