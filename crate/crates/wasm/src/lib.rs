//! Browser bindings for the demo page in `www/`: the graph of `lambda`, the
//! normalized complexity `rho(n) / sqrt(n)`, and a box-dimension estimate.
//!
//! Errors cross the boundary as `JsError` with the core error's message.

use rudin_abelian::boxdim::{dimension_report, sample_graph, DimensionReport};
use rudin_abelian::complexity::rho;
use rudin_abelian::lambda::Quad4;
use wasm_bindgen::prelude::*;

/// Largest sample depth the page may ask for; `[1, 4]` at `4^-8` is about
/// 200k points.
pub const MAX_DEPTH: u32 = 8;

/// Largest `n` for the complexity series.
pub const MAX_SERIES: u32 = 1 << 20;

fn quad4(s: &str) -> Result<Quad4, String> {
    s.trim()
        .parse()
        .map_err(|e: rudin_abelian::Error| format!("{s:?}: {e}"))
}

/// Interleaved `x0, y0, x1, y1, ...` for `lambda` on `[from, to]` at `4^-depth`.
pub fn lambda_points(from: &str, to: &str, depth: u32) -> Result<Vec<f64>, String> {
    if depth > MAX_DEPTH {
        return Err(format!("depth {depth} is above {MAX_DEPTH}"));
    }
    let sample = sample_graph(&quad4(from)?, &quad4(to)?, depth).map_err(|e| e.to_string())?;
    Ok(sample.points().flat_map(|(x, y)| [x, y]).collect())
}

/// `rho(n) / sqrt(n)` for `n = 1..=n_max`.
pub fn complexity_points(n_max: u32) -> Result<Vec<f64>, String> {
    if n_max == 0 || n_max > MAX_SERIES {
        return Err(format!("n must lie in 1..={MAX_SERIES}"));
    }
    Ok((1..=n_max as u64).map(|n| rho(n) as f64 / (n as f64).sqrt()).collect())
}

/// Box counts and fitted slopes for `lambda` on `[alpha, beta]`.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct Dimension {
    slope: f64,
    r2: f64,
    rescaled_slope: f64,
    refined_slope: f64,
    log_inv_delta: Vec<f64>,
    log_count: Vec<f64>,
}

#[wasm_bindgen]
impl Dimension {
    #[wasm_bindgen(getter)]
    pub fn slope(&self) -> f64 {
        self.slope
    }

    #[wasm_bindgen(getter)]
    pub fn r2(&self) -> f64 {
        self.r2
    }

    /// Slope on `[4 alpha, 4 beta]`.
    #[wasm_bindgen(getter, js_name = rescaledSlope)]
    pub fn rescaled_slope(&self) -> f64 {
        self.rescaled_slope
    }

    /// Slope with the sample grid refined once.
    #[wasm_bindgen(getter, js_name = refinedSlope)]
    pub fn refined_slope(&self) -> f64 {
        self.refined_slope
    }

    /// `-ln delta` per mesh.
    #[wasm_bindgen(getter, js_name = logInvDelta)]
    pub fn log_inv_delta(&self) -> Vec<f64> {
        self.log_inv_delta.clone()
    }

    /// `ln N(delta)` per mesh.
    #[wasm_bindgen(getter, js_name = logCount)]
    pub fn log_count(&self) -> Vec<f64> {
        self.log_count.clone()
    }
}

impl From<DimensionReport> for Dimension {
    fn from(r: DimensionReport) -> Self {
        Dimension {
            slope: r.main.fit.slope,
            r2: r.main.fit.r2,
            rescaled_slope: r.rescaled.fit.slope,
            refined_slope: r.refined.fit.slope,
            log_inv_delta: r.main.entries.iter().map(|e| -e.delta.ln()).collect(),
            log_count: r.main.entries.iter().map(|e| (e.count as f64).ln()).collect(),
        }
    }
}

pub fn dimension(alpha: &str, beta: &str, j_min: u32, j_max: u32) -> Result<Dimension, String> {
    if j_max > 6 {
        return Err("j_max above 6 is too slow for the page".into());
    }
    let report = dimension_report(&quad4(alpha)?, &quad4(beta)?, j_min, j_max).map_err(|e| e.to_string())?;
    Ok(report.into())
}

#[wasm_bindgen(js_name = lambdaCurve)]
pub fn lambda_curve(from: &str, to: &str, depth: u32) -> Result<Vec<f64>, JsError> {
    lambda_points(from, to, depth).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = complexitySeries)]
pub fn complexity_series(n_max: u32) -> Result<Vec<f64>, JsError> {
    complexity_points(n_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = boxDimension)]
pub fn box_dimension(alpha: &str, beta: &str, j_min: u32, j_max: u32) -> Result<Dimension, JsError> {
    dimension(alpha, beta, j_min, j_max).map_err(|e| JsError::new(&e))
}
