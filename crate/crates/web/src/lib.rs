//! Browser bindings: limit curves and a sampled disk graph for drawing.
//!
//! The `*_impl` functions carry the logic and are ordinary Rust so they can
//! be tested natively; the exported wrappers only convert errors.

use hypclust::gengraph::{generate, Coords, GenOptions, ModelTag};
use hypclust::graphstats::clustering_report;
use hypclust::limits::{gamma_cc, gamma_k, p_y, LimitContext};
use hypclust::params::derive_params;
use wasm_bindgen::prelude::*;

/// Largest graph the page may request; keeps the tab responsive.
pub const MAX_DEMO_VERTICES: i64 = 20_000;

/// γ(k) for k = 2..=k_max followed by γ as the last entry.
pub fn gamma_curve_impl(alpha: f64, nu: f64, k_max: u32) -> Result<Vec<f64>, String> {
    if k_max < 2 {
        return Err(format!("k_max must be at least 2, got {k_max}"));
    }
    let ctx = LimitContext::new(alpha, nu).map_err(|e| e.to_string())?;
    let mut out = (2..=u64::from(k_max))
        .map(|k| gamma_k(&ctx, k).map_err(|e| e.to_string()))
        .collect::<Result<Vec<f64>, String>>()?;
    out.push(gamma_cc(&ctx).map_err(|e| e.to_string())?);
    Ok(out)
}

/// P(y) on `points` equally spaced heights in [0, y_max].
pub fn p_y_curve_impl(alpha: f64, nu: f64, y_max: f64, points: u32) -> Result<Vec<f64>, String> {
    if points < 2 || !(y_max > 0.0) {
        return Err("need at least two points and y_max > 0".to_string());
    }
    let ctx = LimitContext::new(alpha, nu).map_err(|e| e.to_string())?;
    (0..points)
        .map(|i| p_y(&ctx, y_max * f64::from(i) / f64::from(points - 1)).map_err(|e| e.to_string()))
        .collect()
}

/// A sampled KPKVB graph in a form the page can draw directly.
#[wasm_bindgen]
pub struct DiskGraph {
    radius: f64,
    coords: Vec<f64>,
    edges: Vec<u32>,
    clustering: f64,
}

#[wasm_bindgen]
impl DiskGraph {
    /// Disk radius R.
    #[wasm_bindgen(getter)]
    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Interleaved (r, θ) per vertex.
    #[wasm_bindgen(getter)]
    pub fn coords(&self) -> Vec<f64> {
        self.coords.clone()
    }

    /// Interleaved endpoint pairs, u < v.
    #[wasm_bindgen(getter)]
    pub fn edges(&self) -> Vec<u32> {
        self.edges.clone()
    }

    /// Average local clustering coefficient of the sample.
    #[wasm_bindgen(getter)]
    pub fn clustering(&self) -> f64 {
        self.clustering
    }
}

pub fn sample_disk_impl(alpha: f64, nu: f64, n: i64, seed: u64) -> Result<DiskGraph, String> {
    if n > MAX_DEMO_VERTICES {
        return Err(format!("the demo is limited to {MAX_DEMO_VERTICES} vertices"));
    }
    let params = derive_params(alpha, nu, n).map_err(|e| e.to_string())?;
    let g = generate(&params, seed, ModelTag::Kpkvb, &GenOptions::default()).map_err(|e| e.to_string())?;
    let coords = match &g.coords {
        Coords::Polar(pts) => pts.iter().flat_map(|p| [p.r, p.theta]).collect(),
        Coords::Plane(_) => unreachable!("the disk model yields polar coordinates"),
    };
    let edges = g.adjacency.edges().flat_map(|(u, v)| [u, v]).collect();
    Ok(DiskGraph {
        radius: params.r_disk,
        coords,
        edges,
        clustering: clustering_report(&g.adjacency).c_global,
    })
}

#[wasm_bindgen]
pub fn gamma_curve(alpha: f64, nu: f64, k_max: u32) -> Result<Vec<f64>, JsError> {
    gamma_curve_impl(alpha, nu, k_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn p_y_curve(alpha: f64, nu: f64, y_max: f64, points: u32) -> Result<Vec<f64>, JsError> {
    p_y_curve_impl(alpha, nu, y_max, points).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn sample_disk(alpha: f64, nu: f64, n: u32, seed: u32) -> Result<DiskGraph, JsError> {
    sample_disk_impl(alpha, nu, i64::from(n), u64::from(seed)).map_err(|e| JsError::new(&e))
}
