//! WebAssembly bindings for the browser demo in `www/`.
//!
//! The plain functions (`spectrum_view`, `sweep_view`, `block_view`) are the
//! testable core; the `#[wasm_bindgen]` exports wrap them and turn errors
//! into JS exceptions.

use wasm_bindgen::prelude::*;

use prolate::bounds::{certify_theorem1_on, dft_block_singular_values, prolate_spectrum};
use prolate::ProlateParams;

/// Largest ambient dimension the demo accepts; keeps a dense solve well
/// under a second in the browser.
pub const MAX_M: usize = 4096;
pub const MAX_N: usize = 1024;

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SpectrumView {
    values: Vec<f64>,
    cluster_point: f64,
    width: usize,
    bound: f64,
    passed: bool,
}

#[wasm_bindgen]
impl SpectrumView {
    /// Eigenvalues, descending.
    #[wasm_bindgen(getter)]
    pub fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    /// `(2K + 1) N / M`.
    #[wasm_bindgen(getter)]
    pub fn cluster_point(&self) -> f64 {
        self.cluster_point
    }

    /// `#{eps < lambda < 1 - eps}`.
    #[wasm_bindgen(getter)]
    pub fn width(&self) -> usize {
        self.width
    }

    /// `2 R(N, M, eps)`.
    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.bound
    }

    #[wasm_bindgen(getter)]
    pub fn passed(&self) -> bool {
        self.passed
    }
}

#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct SweepView {
    ms: Vec<f64>,
    widths: Vec<f64>,
    bounds: Vec<f64>,
}

#[wasm_bindgen]
impl SweepView {
    #[wasm_bindgen(getter)]
    pub fn ms(&self) -> Vec<f64> {
        self.ms.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn widths(&self) -> Vec<f64> {
        self.widths.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn bounds(&self) -> Vec<f64> {
        self.bounds.clone()
    }
}

fn limits(m: usize, n: usize) -> prolate::Result<()> {
    if m > MAX_M || n > MAX_N {
        return Err(prolate::Error::InvalidParameter(format!(
            "demo limited to M <= {MAX_M}, N <= {MAX_N}"
        )));
    }
    Ok(())
}

pub fn spectrum_view(m: usize, n: usize, k: usize, epsilon: f64) -> prolate::Result<SpectrumView> {
    limits(m, n)?;
    let params = ProlateParams::new(m, n, k)?;
    let spectrum = prolate_spectrum(&params)?;
    // N = M has R = infinity; report the width without a bound.
    let (bound, passed) = if n < m {
        let rep = certify_theorem1_on(&params, &spectrum, epsilon)?;
        (rep.bound, rep.passed())
    } else {
        (f64::INFINITY, true)
    };
    let width = prolate::bounds::transition_width(&spectrum, epsilon);
    Ok(SpectrumView {
        cluster_point: params.cluster_point(),
        values: spectrum.values,
        width,
        bound,
        passed,
    })
}

/// Widths along `N = M/4`, `K = M/8` for `M = 64, 128, ..., m_max`.
pub fn sweep_view(m_max: usize, epsilon: f64) -> prolate::Result<SweepView> {
    limits(m_max, m_max / 4)?;
    let mut view = SweepView {
        ms: Vec::new(),
        widths: Vec::new(),
        bounds: Vec::new(),
    };
    let mut m = 64;
    while m <= m_max {
        let params = ProlateParams::new(m, m / 4, m / 8)?;
        let rep = certify_theorem1_on(&params, &prolate_spectrum(&params)?, epsilon)?;
        view.ms.push(m as f64);
        view.widths.push(rep.width as f64);
        view.bounds.push(rep.bound);
        m *= 2;
    }
    Ok(view)
}

pub fn block_view(m: usize, p: usize, row: usize, col: usize) -> prolate::Result<Vec<f64>> {
    if p == 0 || m % p != 0 {
        return Err(prolate::Error::InvalidParameter(format!(
            "p = {p} must divide M = {m}"
        )));
    }
    limits(m, m / p)?;
    dft_block_singular_values(m, p, row, col)
}

fn js(e: prolate::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Eigenvalues of `[B_{M,W}]_N` with the transition count at `epsilon`.
#[wasm_bindgen]
pub fn prolate_eigenvalues(
    m: usize,
    n: usize,
    k: usize,
    epsilon: f64,
) -> Result<SpectrumView, JsError> {
    spectrum_view(m, n, k, epsilon).map_err(js)
}

#[wasm_bindgen]
pub fn transition_sweep(m_max: usize, epsilon: f64) -> Result<SweepView, JsError> {
    sweep_view(m_max, epsilon).map_err(js)
}

/// Singular values of the `M/p x M/p` DFT block at cyclic offsets.
#[wasm_bindgen]
pub fn dft_block(m: usize, p: usize, row: usize, col: usize) -> Result<Vec<f64>, JsError> {
    block_view(m, p, row, col).map_err(js)
}
