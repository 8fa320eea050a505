//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point returns a JSON string; the plain-Rust functions in
//! [`views`] build the same values and are what the native tests exercise.

pub mod views;

use wasm_bindgen::prelude::*;

fn to_js(result: seaidx::Result<serde_json::Value>) -> Result<String, JsError> {
    result
        .map(|v| v.to_string())
        .map_err(|e| JsError::new(&e.to_string()))
}

/// One generated series with its PAA and DFT reconstructions and SAX word.
#[wasm_bindgen(js_name = summarizeSeries)]
pub fn summarize_series(kind: &str, m: usize, l: usize, bits: u8, seed: u64) -> Result<String, JsError> {
    to_js(views::series_view(kind, m, l, bits, seed))
}

/// Mean ideal tightness of PAA and DFT-DEA against series budget.
#[wasm_bindgen(js_name = tightnessCurves)]
pub fn tightness_curves(
    kind: &str,
    n: usize,
    m: usize,
    l: usize,
    n_queries: usize,
    seed: u64,
) -> Result<String, JsError> {
    to_js(views::tightness_view(kind, n, m, l, n_queries, seed))
}

/// Gaussian pairwise-distance moments (analytic and sampled) and a histogram.
#[wasm_bindgen(js_name = distanceMoments)]
pub fn distance_moments(m: usize, pairs: usize, seed: u64) -> Result<String, JsError> {
    to_js(views::chi_view(m, pairs, seed))
}
