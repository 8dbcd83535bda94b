//! Three operations for the browser page: coset digit sets of a dilation
//! matrix, the bracket of two intervals at a dilation level, and cascade
//! iterates of a built-in scaling filter. Every call returns a JSON string.

use bracket_core::bracket::bracket_level;
use bracket_core::filters::{builtin, cascade};
use bracket_core::{AnalyticSignal, DilationMatrix, Domain, GridSignal, Signal};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct Cosets {
    index: u64,
    det: i64,
    cosets: Vec<Vec<i64>>,
}

pub fn cosets_json(matrix: &str) -> Result<String, String> {
    let rows: Vec<Vec<i64>> = serde_json::from_str(matrix).map_err(|e| format!("matrix: {e}"))?;
    let d = DilationMatrix::new(rows).map_err(|e| e.to_string())?;
    let out = Cosets { index: d.index_m(), det: d.det(), cosets: d.coset_reps() };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Bracket {
    taps: Vec<(i64, f64)>,
    zeta: Vec<f64>,
    symbol: Vec<f64>,
}

/// `[chi_[a0,a1), chi_[b0,b1)]_n` for the dilation by two, with its Fourier
/// sum sampled on `samples` torus points.
pub fn interval_bracket_json(a0: f64, a1: f64, b0: f64, b1: f64, level: i32, samples: usize) -> Result<String, String> {
    if !(a0 < a1 && b0 < b1) {
        return Err("intervals must have positive length".into());
    }
    let f = Signal::Analytic(AnalyticSignal::indicator(Domain::Time, &[a0], &[a1], 1.0));
    let g = Signal::Analytic(AnalyticSignal::indicator(Domain::Time, &[b0], &[b1], 1.0));
    let d = DilationMatrix::scalar(1, 2).map_err(|e| e.to_string())?;
    let b = bracket_level(&f, &g, &d, level, None).map_err(|e| e.to_string())?;
    let torus = b.to_torus(samples.clamp(2, 4096).next_power_of_two());
    let out = Bracket {
        taps: b.taps().iter().map(|(k, c)| (k[0], c.re)).collect(),
        zeta: (0..torus.len()).map(|j| torus.point(j)[0]).collect(),
        symbol: torus.values().iter().map(|c| c.re).collect(),
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Cascade {
    x: Vec<f64>,
    phi: Vec<f64>,
    step_norms: Vec<f64>,
    gram_defects: Vec<f64>,
}

/// Cascade of a built-in scaling filter (`haar` or `db4`) from the unit box.
pub fn cascade_json(name: &str, iters: usize) -> Result<String, String> {
    if !(1..=14).contains(&iters) {
        return Err("iterations must be between 1 and 14".into());
    }
    if !matches!(name, "haar" | "db4") {
        return Err(format!("cascade is available for haar and db4, not {name}"));
    }
    let b = builtin(name, 1).map_err(|e| e.to_string())?;
    let unit = AnalyticSignal::indicator(Domain::Time, &[0.0], &[1.0], 1.0);
    let init = GridSignal::sample(&unit, vec![4.0], vec![2048]).map_err(|e| e.to_string())?;
    let run = cascade(&b.bank.h, &b.bank.dilation, iters, &Signal::Grid(init)).map_err(|e| e.to_string())?;
    let Signal::Grid(g) = &run.phi else { return Err("cascade returned a non-grid signal".into()) };
    let keep: Vec<usize> = (0..g.values().len()).filter(|j| (0.0..3.5).contains(&g.point(*j)[0])).collect();
    let out = Cascade {
        x: keep.iter().map(|j| g.point(*j)[0]).collect(),
        phi: keep.iter().map(|j| g.values()[*j].re).collect(),
        step_norms: run.step_norms,
        gram_defects: run.gram_defects,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn cosets(matrix: &str) -> Result<String, JsValue> {
    cosets_json(matrix).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn interval_bracket(a0: f64, a1: f64, b0: f64, b1: f64, level: i32, samples: usize) -> Result<String, JsValue> {
    interval_bracket_json(a0, a1, b0, b1, level, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn cascade_iterate(name: &str, iters: usize) -> Result<String, JsValue> {
    cascade_json(name, iters).map_err(|e| JsValue::from_str(&e))
}
