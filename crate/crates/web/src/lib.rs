//! Browser demo: build reference networks, relax them step by step, and
//! construct recovery sequences. Every export returns a JSON string with
//! an `svg` field; errors become JavaScript exceptions.

use elastinet::energy::{energy, penalized_energy};
use elastinet::network::{
    make_circle, make_degenerate_figure_eight, make_ellipse, make_generalized_bubble,
    make_standard_double_bubble, make_symmetric_double_drop, make_teardrop, optimal_bubble_radius,
};
use elastinet::optimize::{Minimizer, OptimizationConfig};
use elastinet::recovery::recovery_sequence;
use elastinet::svg::render_svg;
use elastinet::Network;
use serde_json::json;
use wasm_bindgen::prelude::*;

const SVG_WIDTH: u32 = 480;

fn build(shape: &str, n: usize) -> Result<Network, String> {
    let n = n.clamp(16, 400);
    let net = match shape {
        "circle" => make_circle(1.0, n),
        "ellipse" => make_ellipse(2.0, 1.0, n),
        "double-bubble" => make_standard_double_bubble(optimal_bubble_radius(), n),
        "teardrop" => make_teardrop(2.0, n),
        "double-drop" => make_teardrop(2.0, n).and_then(|d| make_symmetric_double_drop(&d.curves()[0])),
        "figure-eight" => make_degenerate_figure_eight(n),
        other => return Err(format!("unknown shape {other:?}")),
    };
    net.map_err(|e| e.to_string())
}

fn describe(network: &Network) -> Result<serde_json::Value, String> {
    let r = penalized_energy(network, 1.0).map_err(|e| e.to_string())?;
    Ok(json!({
        "kind": network.kind().as_str(),
        "energy": r.penalized,
        "elastic": r.elastic,
        "length": r.length,
        "svg": render_svg(network, SVG_WIDTH),
    }))
}

fn shape_json(shape: &str, n: usize) -> Result<String, String> {
    Ok(describe(&build(shape, n)?)?.to_string())
}

fn generalized_json(alpha1: f64, alpha2: f64, n: usize) -> Result<String, String> {
    let net = make_generalized_bubble(alpha1, alpha2, n.clamp(16, 400)).map_err(|e| e.to_string())?;
    Ok(describe(&net)?.to_string())
}

fn recovery_json(points: usize, n: usize) -> Result<String, String> {
    let eight = make_degenerate_figure_eight(points.clamp(16, 400)).map_err(|e| e.to_string())?;
    let theta = recovery_sequence(&eight, n.max(1)).map_err(|e| e.to_string())?;
    let relaxed = energy(&eight).map_err(|e| e.to_string())?;
    let mut out = describe(&theta)?;
    out["relaxed_energy"] = json!(relaxed);
    out["defect"] = json!(out["energy"].as_f64().unwrap_or(f64::NAN) - relaxed);
    Ok(out.to_string())
}

/// Reference network as `{kind, energy, elastic, length, svg}`.
#[wasm_bindgen]
pub fn reference_shape(shape: &str, n: usize) -> Result<String, JsError> {
    shape_json(shape, n).map_err(|e| JsError::new(&e))
}

/// Optimal two-arc bubble for the given junction angles (radians).
#[wasm_bindgen]
pub fn generalized_bubble(alpha1: f64, alpha2: f64, n: usize) -> Result<String, JsError> {
    generalized_json(alpha1, alpha2, n).map_err(|e| JsError::new(&e))
}

/// Theta-network with segments of length `1/n` cut into a degenerate
/// figure eight, plus its energy excess over the degenerate network.
#[wasm_bindgen]
pub fn recovery(points: usize, n: usize) -> Result<String, JsError> {
    recovery_json(points, n).map_err(|e| JsError::new(&e))
}

/// Minimization that the page advances a few iterations per frame.
#[wasm_bindgen]
pub struct Relaxation {
    minimizer: Minimizer,
    symmetric: bool,
}

impl Relaxation {
    fn create(shape: &str, n: usize) -> Result<Self, String> {
        let network = build(shape, n)?;
        let symmetric = shape == "double-drop";
        let config = OptimizationConfig::default();
        let minimizer = if symmetric {
            Minimizer::symmetric_double_drop(&network, config)
        } else {
            Minimizer::new(&network, config)
        }
        .map_err(|e| e.to_string())?;
        Ok(Self { minimizer, symmetric })
    }

    fn advance(&mut self, iterations: usize) -> String {
        let mut stopped = self.minimizer.termination();
        for _ in 0..iterations {
            if stopped.is_some() {
                break;
            }
            stopped = self.minimizer.step();
        }
        let network = self.minimizer.network();
        json!({
            "iteration": self.minimizer.iterations(),
            "energy": self.minimizer.energy(),
            "grad_norm": self.minimizer.grad_norm(),
            "symmetric": self.symmetric,
            "done": stopped.is_some(),
            "termination": stopped,
            "svg": render_svg(&network, SVG_WIDTH),
        })
        .to_string()
    }
}

#[wasm_bindgen]
impl Relaxation {
    #[wasm_bindgen(constructor)]
    pub fn new(shape: &str, n: usize) -> Result<Relaxation, JsError> {
        Self::create(shape, n).map_err(|e| JsError::new(&e))
    }

    /// Runs up to `iterations` steps and reports the current state.
    pub fn step(&mut self, iterations: usize) -> String {
        self.advance(iterations)
    }
}
