//! Total-curvature lower bounds for piecewise smooth closed curves and the
//! energy bounds that follow from them.
//!
//! For a closed polygon the total absolute turning is at least `2pi`, so
//! every inequality here holds exactly at the discrete level. The tolerance
//! only absorbs rounding and the O(h) gap between polygon and smooth curve.

use std::f64::consts::PI;

use serde::Serialize;

use crate::energy::elastic_energy;
use crate::error::{Error, Result};
use crate::geometry::{
    curvature_vertices, external_angle, polyline_length, turning_angle, DiscreteCurve,
};
use crate::network::{validate_default, Network, NetworkKind};

/// Joins closer than this to a straight reversal are reported as cusps.
const CUSP_EPS: f64 = 1e-9;

/// Closed curve made of open arcs; arc `i` ends where arc `i + 1` starts and
/// the last arc ends at the start of the first. Each join is either a corner,
/// whose external angle enters the bound, or a smooth join, whose turning
/// counts as curvature.
#[derive(Debug, Clone)]
pub struct PiecewiseClosedCurve {
    arcs: Vec<DiscreteCurve>,
    corner: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GaussBonnetReport {
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub holds: bool,
    pub corner_angles: Vec<f64>,
    /// Indices of joins whose external angle is `pi`.
    pub cusps: Vec<usize>,
}

impl PiecewiseClosedCurve {
    pub fn new(arcs: Vec<DiscreteCurve>, corner: Vec<bool>, tol_pos: f64) -> Result<Self> {
        if arcs.is_empty() || arcs.len() != corner.len() {
            return Err(Error::InvalidInput(
                "need one corner flag per arc and at least one arc".into(),
            ));
        }
        for (i, arc) in arcs.iter().enumerate() {
            if arc.is_closed() {
                return Err(Error::InvalidInput(format!("arc {i} must be open")));
            }
            let next = &arcs[(i + 1) % arcs.len()];
            let gap = arc.last().distance(next.first());
            if gap > tol_pos {
                return Err(Error::InvalidInput(format!(
                    "arc {i} misses its successor by {gap:.3e}"
                )));
            }
        }
        Ok(Self { arcs, corner })
    }

    /// Arcs joined at corners everywhere.
    pub fn with_corners(arcs: Vec<DiscreteCurve>, tol_pos: f64) -> Result<Self> {
        let n = arcs.len();
        Self::new(arcs, vec![true; n], tol_pos)
    }

    /// A closed polygon viewed as a single arc with a smooth join.
    pub fn smooth(curve: &DiscreteCurve) -> Result<Self> {
        let mut pts = curve.points().to_vec();
        if curve.is_closed() {
            pts.push(pts[0]);
        }
        Self::new(vec![DiscreteCurve::open(pts)?], vec![false], f64::INFINITY)
    }

    /// The loop formed by curve `i` followed by curve `j` reversed. Both
    /// junctions are corners.
    pub fn theta_pair(theta: &Network, i: usize, j: usize) -> Result<Self> {
        let c = theta.curves();
        Self::with_corners(vec![c[i].clone(), c[j].reversed()], f64::INFINITY)
    }

    pub fn arcs(&self) -> &[DiscreteCurve] {
        &self.arcs
    }

    fn join_turning(&self, i: usize) -> Result<f64> {
        let a = &self.arcs[i];
        let b = &self.arcs[(i + 1) % self.arcs.len()];
        let (_, t_in) = a.end_tangents()?;
        let (t_out, _) = b.end_tangents()?;
        Ok(turning_angle(t_in, t_out))
    }

    /// External angles at the corner joins, in join order.
    pub fn corner_angles(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for i in 0..self.arcs.len() {
            if self.corner[i] {
                let a = &self.arcs[i];
                let b = &self.arcs[(i + 1) % self.arcs.len()];
                out.push(external_angle(a.end_tangents()?.1, b.end_tangents()?.0)?);
            }
        }
        Ok(out)
    }

    fn total_turning_and_step(&self) -> Result<(f64, f64)> {
        let mut turning = total_abs_turning(&self.arcs);
        for i in 0..self.arcs.len() {
            turning += self.join_turning(i)?.abs();
        }
        let h = self
            .arcs
            .iter()
            .map(DiscreteCurve::max_edge_length)
            .fold(0.0, f64::max);
        Ok((turning, h))
    }
}

/// Sum of `|psi|` over the curvature vertices of the given curves.
pub fn total_abs_turning(curves: &[DiscreteCurve]) -> f64 {
    curves
        .iter()
        .map(|c| {
            let pts = c.points();
            let n = pts.len();
            curvature_vertices(c)
                .map(|i| turning_angle(pts[i] - pts[(i + n - 1) % n], pts[(i + 1) % n] - pts[i]).abs())
                .sum::<f64>()
        })
        .sum()
}

/// Discrete `int |k| ds`: turning inside the arcs plus turning at smooth
/// joins. Corner angles are not included.
pub fn total_abs_curvature(curve: &PiecewiseClosedCurve) -> Result<f64> {
    let mut total = total_abs_turning(&curve.arcs);
    for i in 0..curve.arcs.len() {
        if !curve.corner[i] {
            total += curve.join_turning(i)?.abs();
        }
    }
    Ok(total)
}

/// `int |k| ds >= 2pi - sum theta_i`.
pub fn gauss_bonnet_check(curve: &PiecewiseClosedCurve) -> Result<GaussBonnetReport> {
    let lhs = total_abs_curvature(curve)?;
    let corner_angles = curve.corner_angles()?;
    let rhs = 2.0 * PI - corner_angles.iter().sum::<f64>();
    let (turning, h) = curve.total_turning_and_step()?;
    let tolerance = 1e-6 + turning * h;
    let cusps = corner_angles
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > PI - CUSP_EPS)
        .map(|(i, _)| i)
        .collect();
    Ok(GaussBonnetReport {
        lhs,
        rhs,
        tolerance,
        holds: lhs >= rhs - tolerance,
        corner_angles,
        cusps,
    })
}

fn curves_slack(curves: &[DiscreteCurve]) -> f64 {
    let h = curves.iter().map(DiscreteCurve::max_edge_length).fold(0.0, f64::max);
    1e-6 + total_abs_turning(curves) * h
}

/// `int |k| ds >= pi` for a drop.
pub fn drop_bound_check(drop: &Network) -> Result<BoundCheck> {
    if drop.kind() != NetworkKind::Drop {
        return Err(Error::InvalidInput(format!(
            "expected a drop, got {}",
            drop.kind()
        )));
    }
    let lhs = total_abs_turning(drop.curves());
    Ok(BoundCheck {
        lhs,
        rhs: PI,
        holds: lhs >= PI - curves_slack(drop.curves()),
    })
}

/// `int |k| ds >= 4pi/3` for a loop of two arcs meeting at two corners of
/// `pi/3`.
pub fn pair_bound_check(pair: &PiecewiseClosedCurve, tol_ang: f64) -> Result<BoundCheck> {
    let angles = pair.corner_angles()?;
    if angles.len() != 2 || angles.iter().any(|a| (a - PI / 3.0).abs() > tol_ang) {
        return Err(Error::InvalidInput(format!(
            "expected two corners of pi/3, got {angles:?}"
        )));
    }
    let lhs = total_abs_curvature(pair)?;
    let rhs = 4.0 * PI / 3.0;
    let slack = curves_slack(pair.arcs()) + 2.0 * tol_ang;
    Ok(BoundCheck {
        lhs,
        rhs,
        holds: lhs >= rhs - slack,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AmgmReport {
    pub energy: f64,
    /// `c^2 / L + L`.
    pub intermediate: f64,
    pub bound: f64,
    pub holds: bool,
}

/// `F >= c^2/L + L >= 2c` for curves with `int |k| ds >= c`.
pub fn amgm_energy_bound(curves: &[DiscreteCurve], c: f64) -> Result<AmgmReport> {
    if !(c > 0.0) {
        return Err(Error::InvalidConfig(format!("c must be positive, got {c}")));
    }
    let turning = total_abs_turning(curves);
    if turning < c {
        return Err(Error::HypothesisFailed(format!(
            "total curvature {turning} is below c = {c}"
        )));
    }
    let mut e = 0.0;
    let mut l = 0.0;
    for curve in curves {
        e += elastic_energy(curve)?;
        l += polyline_length(curve);
    }
    let f = e + l;
    let intermediate = c * c / l + l;
    let tol = 1e-9 * f;
    Ok(AmgmReport {
        energy: f,
        intermediate,
        bound: 2.0 * c,
        holds: f >= intermediate - tol && intermediate >= 2.0 * c - tol,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThetaBoundReport {
    pub energy: f64,
    pub bound: f64,
    pub holds: bool,
    /// `F(g_1 + g_2)`, `F(g_2 + g_3)`, `F(g_3 + g_1)`.
    pub pair_energies: [f64; 3],
    pub pairs_hold: bool,
}

/// `F >= 4pi` for a Theta-network via its three two-curve loops.
pub fn theta_lower_bound_check(theta: &Network) -> Result<ThetaBoundReport> {
    if !matches!(theta.kind(), NetworkKind::Theta) {
        return Err(Error::InvalidInput(format!(
            "expected a theta network, got {}",
            theta.kind()
        )));
    }
    let report = validate_default(theta)?;
    if !report.valid {
        return Err(Error::Validation(report.issues.join("; ")));
    }
    let per: Vec<f64> = theta
        .curves()
        .iter()
        .map(|c| Ok(elastic_energy(c)? + polyline_length(c)))
        .collect::<Result<_>>()?;
    let energy = per.iter().sum::<f64>();
    let pair_energies = [per[0] + per[1], per[1] + per[2], per[2] + per[0]];
    let slack = curves_slack(theta.curves());
    // F >= 2 * (int |k|) on each loop, so the slack doubles.
    let pair_bound = 8.0 * PI / 3.0 - 2.0 * slack;
    Ok(ThetaBoundReport {
        energy,
        bound: 4.0 * PI,
        holds: energy >= 4.0 * PI - 3.0 * slack,
        pairs_hold: pair_energies.iter().all(|&f| f >= pair_bound),
        pair_energies,
    })
}

/// `int |k| ds <= sqrt(E L)`.
pub fn turning_cauchy_schwarz(curve: &DiscreteCurve) -> Result<BoundCheck> {
    let lhs = total_abs_turning(std::slice::from_ref(curve));
    let rhs = (elastic_energy(curve)? * polyline_length(curve)).sqrt();
    Ok(BoundCheck {
        lhs,
        rhs,
        holds: lhs <= rhs * (1.0 + 1e-12) + 1e-12,
    })
}

/// `|t(1) - t(0)| <= sqrt(F L)` for an open curve.
pub fn tangent_gap_bound(curve: &DiscreteCurve) -> Result<BoundCheck> {
    if curve.is_closed() {
        return Err(Error::InvalidInput("tangent gap needs an open curve".into()));
    }
    let (t0, t1) = curve.end_tangents()?;
    let l = polyline_length(curve);
    let f = elastic_energy(curve)? + l;
    let rhs = (f * l).sqrt();
    let lhs = (t1 - t0).norm();
    Ok(BoundCheck {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point2;
    use crate::network::{make_circle, make_standard_double_bubble, make_teardrop, optimal_bubble_radius};

    fn segment(a: Point2, b: Point2, n: usize) -> DiscreteCurve {
        DiscreteCurve::open((0..=n).map(|i| a + (b - a) * (i as f64 / n as f64)).collect()).unwrap()
    }

    fn square_loop() -> PiecewiseClosedCurve {
        let c = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        let arcs = (0..4).map(|i| segment(c[i], c[(i + 1) % 4], 10)).collect();
        PiecewiseClosedCurve::with_corners(arcs, 1e-12).unwrap()
    }

    #[test]
    fn circle_is_sharp() {
        let circle = make_circle(1.0, 360).unwrap();
        let pc = PiecewiseClosedCurve::smooth(&circle.curves()[0]).unwrap();
        let lhs = total_abs_curvature(&pc).unwrap();
        assert!((lhs - 2.0 * PI).abs() < 1e-3 * 2.0 * PI);
        let gb = gauss_bonnet_check(&pc).unwrap();
        assert!(gb.holds && (gb.lhs - gb.rhs).abs() < 1e-3);
    }

    #[test]
    fn square_corners_carry_everything() {
        let gb = gauss_bonnet_check(&square_loop()).unwrap();
        assert_eq!(gb.lhs, 0.0);
        assert!(gb.rhs.abs() < 1e-12);
        assert!(gb.holds);
    }

    #[test]
    fn rounded_square() {
        let rho = 0.2;
        let mut pts = Vec::new();
        let centers = [(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)];
        for (k, (cx, cy)) in centers.iter().enumerate() {
            for j in 0..=50 {
                let t = (k as f64 + j as f64 / 50.0) * PI / 2.0;
                pts.push(Point2::new(cx + rho * t.cos(), cy + rho * t.sin()));
            }
        }
        let pc = PiecewiseClosedCurve::smooth(&DiscreteCurve::closed(pts).unwrap()).unwrap();
        let lhs = total_abs_curvature(&pc).unwrap();
        assert!((lhs - 2.0 * PI).abs() < 5e-3 * 2.0 * PI, "{lhs}");
    }

    #[test]
    fn cusps_are_flagged() {
        let a = segment(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), 4);
        let b = segment(Point2::new(1.0, 0.0), Point2::new(0.0, 0.0), 4);
        let gb = gauss_bonnet_check(&PiecewiseClosedCurve::with_corners(vec![a, b], 1e-12).unwrap())
            .unwrap();
        assert_eq!(gb.cusps, vec![0, 1]);
        assert!(gb.holds);
    }

    #[test]
    fn gap_is_rejected() {
        let a = segment(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), 4);
        let b = segment(Point2::new(1.0, 0.1), Point2::new(0.0, 0.0), 4);
        assert!(matches!(
            PiecewiseClosedCurve::with_corners(vec![a, b], 1e-6),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn drops() {
        let c = make_circle(1.0, 100).unwrap();
        let mut pts = c.curves()[0].points().to_vec();
        pts.push(pts[0]);
        let drop = Network::drop_curve(DiscreteCurve::open(pts).unwrap());
        let r = drop_bound_check(&drop).unwrap();
        assert!(r.holds && r.lhs > 6.0);
        let r = drop_bound_check(&make_teardrop(1.0, 200).unwrap()).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(drop_bound_check(&c).is_err());
    }

    #[test]
    fn double_bubble_pairs() {
        let net = make_standard_double_bubble(1.0, 200).unwrap();
        let p12 = PiecewiseClosedCurve::theta_pair(&net, 0, 1).unwrap();
        let r = pair_bound_check(&p12, 1e-9).unwrap();
        assert!((r.lhs - 4.0 * PI / 3.0).abs() < 1e-9, "{r:?}");
        assert!(r.holds);
        let p13 = PiecewiseClosedCurve::theta_pair(&net, 0, 2).unwrap();
        let r = pair_bound_check(&p13, 1e-9).unwrap();
        assert!((r.lhs - 8.0 * PI / 3.0).abs() < 1e-9);
        let th = theta_lower_bound_check(&make_standard_double_bubble(optimal_bubble_radius(), 400).unwrap())
            .unwrap();
        assert!(th.holds && th.pairs_hold);
        assert!((0.5 * th.pair_energies.iter().sum::<f64>() - th.energy).abs() <= 1e-12 * th.energy);
    }

    #[test]
    fn amgm() {
        let c1 = make_circle(1.0, 400).unwrap();
        let r = amgm_energy_bound(c1.curves(), 2.0 * PI - 1e-9).unwrap();
        assert!(r.holds);
        assert!((r.energy - 4.0 * PI).abs() < 1e-3 * 4.0 * PI);
        let c2 = make_circle(2.0, 400).unwrap();
        let r = amgm_energy_bound(c2.curves(), 2.0 * PI - 1e-9).unwrap();
        assert!(r.holds && (r.energy - 5.0 * PI).abs() < 1e-2);
        assert!(matches!(
            amgm_energy_bound(c2.curves(), 7.0),
            Err(Error::HypothesisFailed(_))
        ));
    }

    #[test]
    fn cauchy_schwarz_and_tangent_gap() {
        let c = make_circle(1.0, 100).unwrap();
        let r = turning_cauchy_schwarz(&c.curves()[0]).unwrap();
        assert!(r.holds && (r.lhs - r.rhs).abs() < 1e-9);
        let seg = segment(Point2::ORIGIN, Point2::new(2.0, 0.0), 10);
        let r = turning_cauchy_schwarz(&seg).unwrap();
        assert!(r.holds && r.lhs == 0.0 && r.rhs == 0.0);
        let r = tangent_gap_bound(&seg).unwrap();
        assert!(r.holds && r.lhs == 0.0);
        // half circle built from tangent end edges: gap is exactly 2
        let half = crate::network::make_two_arc_bubble(PI / 2.0, PI / 2.0, 2.0, 200).unwrap();
        let r = tangent_gap_bound(&half.curves()[0]).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-12);
        assert!((r.rhs - (2.0 * PI * PI).sqrt()).abs() < 1e-3);
        assert!(r.holds);
    }

    #[test]
    fn shrinking_arcs_blow_up() {
        let mut last = 0.0;
        for d in [1.0, 0.1, 0.01] {
            let arc = crate::network::make_two_arc_bubble(PI / 2.0, PI / 2.0, d, 50).unwrap();
            let c = &arc.curves()[0];
            let l = polyline_length(c);
            let e = elastic_energy(c).unwrap();
            assert!(e >= 4.0 / l - 1e-9);
            assert!(e > last);
            last = e;
        }
    }
}
