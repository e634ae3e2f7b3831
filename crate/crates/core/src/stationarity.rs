//! Residuals of the curve equation `2 k_ss + k^3 - k = 0` and of the two
//! triple-junction conditions `sum k = 0`, `sum (2 k_s nu + k^2 tau) = 0`.
//!
//! Curvature lives on vertices. Arclength derivatives use the three-point
//! nonuniform stencil in the interior; at a junction `k` and `k_s` come from
//! the quadratic through the three vertex values nearest to it. Every curve
//! is read in its stored orientation at both of its ends.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{vertex_curvature, DiscreteCurve, Point2};
use crate::network::{CurveEnd, Network};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub interior_residuals: Vec<Vec<f64>>,
    pub interior_max_abs: f64,
    /// `sum_i k^i` at each junction.
    pub junction_scalar: Vec<f64>,
    /// `sum_i (2 k^i_s nu^i + (k^i)^2 tau^i)` at each junction.
    pub junction_vector: Vec<Point2>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditThresholds {
    pub interior: f64,
    pub junction: f64,
}

impl Default for AuditThresholds {
    fn default() -> Self {
        Self {
            interior: 1e-2,
            junction: 1e-2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditResult {
    pub pass: bool,
    pub report: ResidualReport,
    pub failures: Vec<String>,
}

/// Arclength position of every vertex.
fn arclength_positions(curve: &DiscreteCurve) -> Vec<f64> {
    let pts = curve.points();
    let mut s = Vec::with_capacity(pts.len());
    let mut acc = 0.0;
    s.push(0.0);
    for w in pts.windows(2) {
        acc += w[0].distance(w[1]);
        s.push(acc);
    }
    s
}

/// `2 k_ss + k^3 - k` at every vertex whose two neighbours carry curvature.
pub fn el_residual(curve: &DiscreteCurve) -> Result<Vec<f64>> {
    if curve.len() < 8 {
        return Err(Error::InvalidInput(format!(
            "residual needs at least 8 points, got {}",
            curve.len()
        )));
    }
    let vc = vertex_curvature(curve)?;
    let k: Vec<f64> = vc.iter().map(|v| v.kappa).collect();
    let m = k.len();
    let mut out = Vec::with_capacity(m);
    if curve.is_closed() {
        let n = curve.len();
        for i in 0..m {
            let h1 = curve.edge((i + n - 1) % n).norm();
            let h2 = curve.edge(i).norm();
            let kss = second_derivative(k[(i + m - 1) % m], k[i], k[(i + 1) % m], h1, h2);
            out.push(2.0 * kss + k[i].powi(3) - k[i]);
        }
    } else {
        let s = arclength_positions(curve);
        // vc[j] sits at vertex j + 1
        for j in 1..m - 1 {
            let h1 = s[j + 1] - s[j];
            let h2 = s[j + 2] - s[j + 1];
            let kss = second_derivative(k[j - 1], k[j], k[j + 1], h1, h2);
            out.push(2.0 * kss + k[j].powi(3) - k[j]);
        }
    }
    Ok(out)
}

fn second_derivative(km: f64, k0: f64, kp: f64, h1: f64, h2: f64) -> f64 {
    2.0 * ((kp - k0) / h2 - (k0 - km) / h1) / (h1 + h2)
}

/// Value and first derivative at `x = 0` of the quadratic through three points.
fn quadratic_at_zero(x: [f64; 3], y: [f64; 3]) -> (f64, f64) {
    let mut value = 0.0;
    let mut slope = 0.0;
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let denom = (x[i] - x[j]) * (x[i] - x[l]);
        value += y[i] * x[j] * x[l] / denom;
        slope += y[i] * -(x[j] + x[l]) / denom;
    }
    (value, slope)
}

/// Curvature and its arclength derivative at one end of an open curve, with
/// the arclength measured in the curve's own direction.
pub fn end_curvature(curve: &DiscreteCurve, end: CurveEnd) -> Result<(f64, f64)> {
    let vc = vertex_curvature(curve)?;
    if vc.len() < 3 {
        return Err(Error::InvalidInput(
            "end extrapolation needs three curvature vertices".into(),
        ));
    }
    let s = arclength_positions(curve);
    let total = *s.last().expect("nonempty curve");
    let m = vc.len();
    let (x, y) = match end {
        CurveEnd::Start => (
            [s[vc[0].index], s[vc[1].index], s[vc[2].index]],
            [vc[0].kappa, vc[1].kappa, vc[2].kappa],
        ),
        CurveEnd::End => (
            [
                s[vc[m - 1].index] - total,
                s[vc[m - 2].index] - total,
                s[vc[m - 3].index] - total,
            ],
            [vc[m - 1].kappa, vc[m - 2].kappa, vc[m - 3].kappa],
        ),
    };
    Ok(quadratic_at_zero(x, y))
}

fn junction_terms(network: &Network, end: CurveEnd) -> Result<(f64, Point2)> {
    let mut scalar = 0.0;
    let mut vector = Point2::ORIGIN;
    for curve in network.curves() {
        let (k, ks) = end_curvature(curve, end)?;
        let (t0, t1) = curve.end_tangents()?;
        let tau = match end {
            CurveEnd::Start => t0,
            CurveEnd::End => t1,
        };
        scalar += k;
        vector += tau.perp() * (2.0 * ks) + tau * (k * k);
    }
    Ok((scalar, vector))
}

fn interior(network: &Network) -> Result<(Vec<Vec<f64>>, f64)> {
    let residuals = network
        .curves()
        .iter()
        .map(el_residual)
        .collect::<Result<Vec<_>>>()?;
    let max = residuals
        .iter()
        .flatten()
        .fold(0.0_f64, |m, r| m.max(r.abs()));
    Ok((residuals, max))
}

/// Interior and junction residuals of a Theta-network.
pub fn junction_residuals(theta: &Network) -> Result<ResidualReport> {
    if !theta.kind().is_triple() {
        return Err(Error::InvalidInput(format!(
            "junction residuals need a theta network, got {}",
            theta.kind()
        )));
    }
    theta.check_structure()?;
    let (interior_residuals, interior_max_abs) = interior(theta)?;
    let mut junction_scalar = Vec::new();
    let mut junction_vector = Vec::new();
    for end in [CurveEnd::Start, CurveEnd::End] {
        let (s, v) = junction_terms(theta, end)?;
        junction_scalar.push(s);
        junction_vector.push(v);
    }
    Ok(ResidualReport {
        interior_residuals,
        interior_max_abs,
        junction_scalar,
        junction_vector,
    })
}

/// Residual report for any kind; junction terms only for Theta-networks.
pub fn residuals(network: &Network) -> Result<ResidualReport> {
    if network.kind().is_triple() {
        return junction_residuals(network);
    }
    let (interior_residuals, interior_max_abs) = interior(network)?;
    Ok(ResidualReport {
        interior_residuals,
        interior_max_abs,
        junction_scalar: Vec::new(),
        junction_vector: Vec::new(),
    })
}

pub fn criticality_audit(network: &Network, thresholds: AuditThresholds) -> Result<AuditResult> {
    let report = residuals(network)?;
    let mut failures = Vec::new();
    if report.interior_max_abs > thresholds.interior {
        failures.push(format!(
            "interior residual {:.3e} exceeds {:.1e}",
            report.interior_max_abs, thresholds.interior
        ));
    }
    for (j, (s, v)) in report
        .junction_scalar
        .iter()
        .zip(&report.junction_vector)
        .enumerate()
    {
        if s.abs() > thresholds.junction {
            failures.push(format!("junction {j}: curvature sum {s:.3e}"));
        }
        if v.norm() > thresholds.junction {
            failures.push(format!(
                "junction {j}: junction_vector ({:.4}, {:.4}) is nonzero",
                v.x, v.y
            ));
        }
    }
    Ok(AuditResult {
        pass: failures.is_empty(),
        report,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{make_circle, make_standard_double_bubble, make_two_arc_bubble, optimal_bubble_radius};
    use std::f64::consts::PI;

    #[test]
    fn circles() {
        let r = el_residual(&make_circle(1.0, 400).unwrap().curves()[0]).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-3));
        let r = el_residual(&make_circle(2.0, 400).unwrap().curves()[0]).unwrap();
        assert!(r.iter().all(|x| (x + 0.375).abs() < 1e-3));
        assert!(criticality_audit(&make_circle(1.0, 400).unwrap(), AuditThresholds::default())
            .unwrap()
            .pass);
    }

    #[test]
    fn arc_residual_converges() {
        // open arcs of radius 1.5: residual (1 - R^2)/R^3
        let want = (1.0 - 2.25) / 3.375;
        let mut errs = Vec::new();
        for n in [100, 200, 400] {
            let net = make_two_arc_bubble(PI / 2.0, PI / 2.0, 3.0, n).unwrap();
            let r = el_residual(&net.curves()[0]).unwrap();
            errs.push(r.iter().fold(0.0_f64, |m, x| m.max((x - want).abs())));
        }
        assert!(errs[2] < 1e-3, "{errs:?}");
    }

    #[test]
    fn double_bubble_is_not_critical() {
        let r = 0.8;
        let net = make_standard_double_bubble(r, 200).unwrap();
        let rep = junction_residuals(&net).unwrap();
        assert!(rep.junction_scalar[0].abs() < 1e-6);
        let v = rep.junction_vector[0];
        assert!(v.distance(Point2::new(1.0 / (r * r), 0.0)) < 1e-3, "{v:?}");
        let rbar = optimal_bubble_radius();
        let rep = junction_residuals(&make_standard_double_bubble(rbar, 400).unwrap()).unwrap();
        assert!((rep.junction_vector[0].norm() - 1.2068).abs() < 1e-3);
        let audit = criticality_audit(&net, AuditThresholds::default()).unwrap();
        assert!(!audit.pass);
        assert!(audit.failures.iter().any(|f| f.contains("junction_vector")));
    }

    #[test]
    fn junction_vector_rotates_with_network() {
        let net = make_standard_double_bubble(1.0, 100).unwrap();
        let v = junction_residuals(&net).unwrap().junction_vector;
        for phi in [0.3, 2.0, -1.1] {
            let w = junction_residuals(&net.rotated(phi)).unwrap().junction_vector;
            for (a, b) in v.iter().zip(&w) {
                assert!(a.rotated(phi).distance(*b) < 1e-9);
            }
            let t = junction_residuals(&net.translated(Point2::new(3.0, -2.0))).unwrap();
            assert!(t.junction_vector[0].distance(v[0]) < 1e-9);
        }
    }

    #[test]
    fn quadratic_extrapolation_is_exact_on_parabolas() {
        let f = |x: f64| 2.0 - 3.0 * x + 0.5 * x * x;
        let (v, d) = quadratic_at_zero([0.1, 0.3, 0.7], [f(0.1), f(0.3), f(0.7)]);
        assert!((v - 2.0).abs() < 1e-12 && (d + 3.0).abs() < 1e-12);
    }

    #[test]
    fn short_curves_are_rejected() {
        let c = make_circle(1.0, 8).unwrap();
        assert!(el_residual(&c.curves()[0]).is_ok());
        let tiny = DiscreteCurve::closed(c.curves()[0].points()[..7].to_vec()).unwrap();
        assert!(matches!(el_residual(&tiny), Err(Error::InvalidInput(_))));
    }
}
