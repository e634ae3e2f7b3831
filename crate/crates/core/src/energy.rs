//! Length, bending energy and the penalized functional `E + alpha * L`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{curvature_vertices, dual_weights, polyline_length, turning_angle, DiscreteCurve, Point2};
use crate::network::Network;

/// Curves shorter than this fraction of the network diameter are treated as
/// collapsed and contribute nothing.
pub const DEGENERATE_LENGTH_RATIO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveTerms {
    pub length: f64,
    pub elastic: f64,
    pub penalized: f64,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub length: f64,
    pub elastic: f64,
    pub penalized: f64,
    pub alpha: f64,
    pub per_curve: Vec<CurveTerms>,
}

/// Discrete bending energy `sum psi_i^2 / l_i` over curvature-carrying vertices.
pub fn elastic_energy(curve: &DiscreteCurve) -> Result<f64> {
    Ok(crate::geometry::vertex_curvature(curve)?
        .iter()
        .map(|v| v.turning * v.turning / v.dual_length)
        .sum())
}

/// `E + alpha L` of a single curve together with its gradient with respect
/// to every point. Zero-length edges must not occur.
pub fn curve_energy_with_gradient(curve: &DiscreteCurve, alpha: f64) -> (f64, f64, Vec<Point2>) {
    let pts = curve.points();
    let n = pts.len();
    let mut grad = vec![Point2::ORIGIN; n];
    let mut elastic = 0.0;
    let mut length = 0.0;

    for j in 0..curve.edge_count() {
        let e = curve.edge(j);
        let len = e.norm();
        length += len;
        let g = e * (alpha / len);
        grad[(j + 1) % n] += g;
        grad[j] -= g;
    }

    for i in curvature_vertices(curve) {
        let ip = (i + n - 1) % n;
        let inx = (i + 1) % n;
        let a = pts[i] - pts[ip];
        let b = pts[inx] - pts[i];
        let (la, lb) = (a.norm(), b.norm());
        let psi = turning_angle(a, b);
        let (wa, wb) = dual_weights(curve, i);
        let dual = wa * la + wb * lb;
        elastic += psi * psi / dual;

        let c_psi = 2.0 * psi / dual;
        let c_len = -psi * psi / (dual * dual);
        let ga = a.perp() * (-c_psi / (la * la)) + a * (wa * c_len / la);
        let gb = b.perp() * (c_psi / (lb * lb)) + b * (wb * c_len / lb);
        grad[i] += ga;
        grad[ip] -= ga;
        grad[inx] += gb;
        grad[i] -= gb;
    }
    (elastic, length, grad)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("alpha must be positive, got {alpha}")))
    }
}

/// Penalized energy with a per-curve breakdown.
pub fn penalized_energy(network: &Network, alpha: f64) -> Result<EnergyReport> {
    check_alpha(alpha)?;
    let diameter = network.bbox_diameter();
    let mut per_curve = Vec::with_capacity(network.curves().len());
    for curve in network.curves() {
        let length = polyline_length(curve);
        let degenerate = length <= DEGENERATE_LENGTH_RATIO * diameter;
        let terms = if degenerate {
            CurveTerms {
                length: 0.0,
                elastic: 0.0,
                penalized: 0.0,
                degenerate,
            }
        } else {
            let elastic = elastic_energy(curve)?;
            CurveTerms {
                length,
                elastic,
                penalized: elastic + alpha * length,
                degenerate,
            }
        };
        per_curve.push(terms);
    }
    let length: f64 = per_curve.iter().map(|c| c.length).sum();
    let elastic: f64 = per_curve.iter().map(|c| c.elastic).sum();
    Ok(EnergyReport {
        length,
        elastic,
        penalized: elastic + alpha * length,
        alpha,
        per_curve,
    })
}

/// `F_1` shorthand.
pub fn energy(network: &Network) -> Result<f64> {
    Ok(penalized_energy(network, 1.0)?.penalized)
}

/// `|F_1(G) - a^{-1/2} F_a(a^{-1/2} G)|`.
pub fn scaling_identity_check(network: &Network, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let f1 = energy(network)?;
    let s = alpha.powf(-0.5);
    let scaled = network.scaled(s, network.anchor());
    let fa = penalized_energy(&scaled, alpha)?.penalized;
    Ok((f1 - s * fa).abs())
}

/// Dilation by `sqrt(E/L)` about the network anchor, which makes `E = L`.
pub fn optimal_rescale(network: &Network) -> Result<(f64, Network)> {
    let report = penalized_energy(network, 1.0)?;
    if !(report.elastic > 0.0 && report.length > 0.0) {
        return Err(Error::NoOptimalRescale);
    }
    let factor = (report.elastic / report.length).sqrt();
    Ok((factor, network.scaled(factor, network.anchor())))
}

/// `|E - L| / max(E, L)`.
pub fn equipartition_defect(network: &Network) -> Result<f64> {
    let r = penalized_energy(network, 1.0)?;
    let m = r.elastic.max(r.length);
    if m == 0.0 {
        return Ok(0.0);
    }
    Ok((r.elastic - r.length).abs() / m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{make_circle, make_standard_double_bubble, optimal_bubble_radius};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn circle_energies() {
        let c1 = make_circle(1.0, 200).unwrap();
        let c2 = make_circle(2.0, 200).unwrap();
        let e2 = elastic_energy(&c2.curves()[0]).unwrap();
        assert!((e2 - PI).abs() < 1e-3 * PI);
        let e1 = elastic_energy(&c1.curves()[0]).unwrap();
        assert!((e1 - 2.0 * PI).abs() < 1e-3 * 2.0 * PI);
        assert!((energy(&c1).unwrap() - 4.0 * PI).abs() < 1e-3 * 4.0 * PI);
        assert!((energy(&c2).unwrap() - 5.0 * PI).abs() < 1e-3 * 5.0 * PI);
        let f4 = penalized_energy(&c1, 4.0).unwrap().penalized;
        assert!((f4 - 10.0 * PI).abs() < 1e-3 * 10.0 * PI);
    }

    #[test]
    fn straight_segment_has_no_bending() {
        let seg = DiscreteCurve::open(
            (0..10).map(|i| Point2::new(i as f64 * 0.1, 0.0)).collect(),
        )
        .unwrap();
        assert_eq!(elastic_energy(&seg).unwrap(), 0.0);
    }

    #[test]
    fn report_is_consistent() {
        let net = make_standard_double_bubble(0.8, 60).unwrap();
        let r = penalized_energy(&net, 2.5).unwrap();
        assert_relative_eq!(r.penalized, r.elastic + 2.5 * r.length, max_relative = 1e-12);
        let sum: f64 = r.per_curve.iter().map(|c| c.penalized).sum();
        assert_relative_eq!(sum, r.penalized, max_relative = 1e-12);
        assert!(matches!(penalized_energy(&net, 0.0), Err(Error::InvalidConfig(_))));
        assert!(matches!(penalized_energy(&net, -1.0), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn scaling_identity() {
        let c = make_circle(1.0, 64).unwrap();
        assert_eq!(scaling_identity_check(&c, 1.0).unwrap(), 0.0);
        let f = energy(&c).unwrap();
        assert!(scaling_identity_check(&c, 4.0).unwrap() <= 1e-9 * f);
    }

    #[test]
    fn rescaling() {
        let (f, r) = optimal_rescale(&make_circle(2.0, 100).unwrap()).unwrap();
        assert_relative_eq!(f, 0.5, max_relative = 1e-3);
        assert!(equipartition_defect(&r).unwrap() <= 1e-9);
        let (f3, _) = optimal_rescale(&make_circle(1.0 / 3.0, 100).unwrap()).unwrap();
        assert_relative_eq!(f3, 3.0, max_relative = 1e-3);
        let bubble = make_standard_double_bubble(optimal_bubble_radius(), 400).unwrap();
        let (fb, rb) = optimal_rescale(&bubble).unwrap();
        assert!((fb - 1.0).abs() < 1e-3);
        assert!(equipartition_defect(&rb).unwrap() <= 1e-6);
        let e = penalized_energy(&bubble, 1.0).unwrap();
        assert_relative_eq!(
            energy(&rb).unwrap(),
            2.0 * (e.elastic * e.length).sqrt(),
            max_relative = 1e-9
        );
    }

    #[test]
    fn straight_network_has_no_rescale() {
        let seg = DiscreteCurve::open(
            (0..10).map(|i| Point2::new(i as f64 * 0.1, 0.0)).collect(),
        )
        .unwrap();
        let net = Network::drop_curve(seg);
        assert!(matches!(optimal_rescale(&net), Err(Error::NoOptimalRescale)));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let pts: Vec<Point2> = (0..12)
            .map(|i| {
                let t = i as f64 / 12.0 * 2.0 * PI;
                Point2::new(1.3 * t.cos() + 0.1 * (3.0 * t).sin(), t.sin())
            })
            .collect();
        for closed in [true, false] {
            let curve = DiscreteCurve::new(pts.clone(), closed).unwrap();
            let (_, _, g) = curve_energy_with_gradient(&curve, 1.7);
            let f = |c: &DiscreteCurve| {
                let (e, l, _) = curve_energy_with_gradient(c, 1.7);
                e + 1.7 * l
            };
            let h = 1e-6;
            for i in 0..pts.len() {
                for axis in 0..2 {
                    let bump = |s: f64| {
                        let mut p = pts.clone();
                        if axis == 0 {
                            p[i].x += s
                        } else {
                            p[i].y += s
                        }
                        DiscreteCurve::new(p, closed).unwrap()
                    };
                    let fd = (f(&bump(h)) - f(&bump(-h))) / (2.0 * h);
                    let an = if axis == 0 { g[i].x } else { g[i].y };
                    assert!((fd - an).abs() < 1e-6 * (1.0 + an.abs()), "{fd} vs {an}");
                }
            }
        }
    }
}
