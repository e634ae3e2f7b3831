//! Curve networks: closed curves, drops, Theta-networks and their relatives.
//!
//! Every curve of a junctioned network runs from junction 0 to junction 1
//! (or from the single junction back to itself for drops and degenerate
//! networks). At a triple junction the outgoing directions are
//! `frame_angle + orientation * offset_j` where the offsets are
//! `[0, a1, a1 + a2]` (`a1 = a2 = 2pi/3` for ordinary Theta-networks) and the
//! orientation is `+1` or `-1` depending on the cyclic order of the curves.

use std::f64::consts::{FRAC_PI_3, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    angle_distance, bbox_diameter, resample_uniform, wrap_angle, DiscreteCurve, Point2,
};

/// Default angle tolerance in radians.
pub const DEFAULT_TOL_ANG: f64 = 1e-6;
/// Default position tolerance, relative to the network diameter.
pub const DEFAULT_TOL_POS_REL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NetworkKind {
    Closed,
    Drop,
    Theta,
    DegenerateTheta,
    GeneralizedTheta,
    /// Two drops sharing their endpoint, without angle conditions.
    DoubleDrop,
}

impl NetworkKind {
    pub const ALL: [NetworkKind; 6] = [
        NetworkKind::Closed,
        NetworkKind::Drop,
        NetworkKind::Theta,
        NetworkKind::DegenerateTheta,
        NetworkKind::GeneralizedTheta,
        NetworkKind::DoubleDrop,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NetworkKind::Closed => "closed",
            NetworkKind::Drop => "drop",
            NetworkKind::Theta => "theta",
            NetworkKind::DegenerateTheta => "degenerate_theta",
            NetworkKind::GeneralizedTheta => "generalized_theta",
            NetworkKind::DoubleDrop => "double_drop",
        }
    }

    pub fn curve_count(self) -> usize {
        match self {
            NetworkKind::Closed | NetworkKind::Drop => 1,
            NetworkKind::DegenerateTheta | NetworkKind::DoubleDrop => 2,
            NetworkKind::Theta | NetworkKind::GeneralizedTheta => 3,
        }
    }

    pub fn junction_count(self) -> usize {
        match self {
            NetworkKind::Closed => 0,
            NetworkKind::Drop | NetworkKind::DegenerateTheta | NetworkKind::DoubleDrop => 1,
            NetworkKind::Theta | NetworkKind::GeneralizedTheta => 2,
        }
    }

    pub fn is_triple(self) -> bool {
        matches!(self, NetworkKind::Theta | NetworkKind::GeneralizedTheta)
    }
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NetworkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NetworkKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown network kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Junction {
    pub position: Point2,
    pub frame_angle: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    kind: NetworkKind,
    curves: Vec<DiscreteCurve>,
    junctions: Vec<Junction>,
    angles: Option<[f64; 3]>,
}

/// Which end of a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveEnd {
    Start,
    End,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub junction_gap: f64,
    pub angle_defect: f64,
    /// Human-readable reasons for invalidity.
    pub issues: Vec<String>,
}

impl Network {
    /// Assembles a network without checking it; see [`validate`].
    pub fn from_parts(
        kind: NetworkKind,
        curves: Vec<DiscreteCurve>,
        junctions: Vec<Junction>,
        angles: Option<[f64; 3]>,
    ) -> Self {
        Self {
            kind,
            curves,
            junctions,
            angles,
        }
    }

    pub fn closed_curve(curve: DiscreteCurve) -> Self {
        Self::from_parts(NetworkKind::Closed, vec![curve], Vec::new(), None)
    }

    /// A drop whose closure point is the first point of `curve`.
    pub fn drop_curve(curve: DiscreteCurve) -> Self {
        let junction = Junction {
            position: curve.first(),
            frame_angle: 0.0,
        };
        Self::from_parts(NetworkKind::Drop, vec![curve], vec![junction], None)
    }

    pub fn kind(&self) -> NetworkKind {
        self.kind
    }

    pub fn curves(&self) -> &[DiscreteCurve] {
        &self.curves
    }

    #[cfg(test)]
    pub(crate) fn curves_mut(&mut self) -> &mut [DiscreteCurve] {
        &mut self.curves
    }

    pub fn junctions(&self) -> &[Junction] {
        &self.junctions
    }

    pub fn angles(&self) -> Option<[f64; 3]> {
        self.angles
    }

    pub fn bbox_diameter(&self) -> f64 {
        bbox_diameter(self.curves.iter().flat_map(|c| c.points().iter().copied()))
    }

    /// Fixed point for dilations: the first junction, or the origin.
    pub fn anchor(&self) -> Point2 {
        self.junctions
            .first()
            .map(|j| j.position)
            .unwrap_or(Point2::ORIGIN)
    }

    pub fn total_points(&self) -> usize {
        self.curves.iter().map(DiscreteCurve::len).sum()
    }

    fn map_geometry(&self, f: impl Fn(Point2) -> Point2, dtheta: f64) -> Self {
        Self {
            kind: self.kind,
            curves: self.curves.iter().map(|c| c.map_points(&f)).collect(),
            junctions: self
                .junctions
                .iter()
                .map(|j| Junction {
                    position: f(j.position),
                    frame_angle: wrap_angle(j.frame_angle + dtheta),
                })
                .collect(),
            angles: self.angles,
        }
    }

    pub fn scaled(&self, factor: f64, about: Point2) -> Self {
        self.map_geometry(|p| about + (p - about) * factor, 0.0)
    }

    pub fn translated(&self, by: Point2) -> Self {
        self.map_geometry(|p| p + by, 0.0)
    }

    /// Rotation about the origin.
    pub fn rotated(&self, phi: f64) -> Self {
        self.map_geometry(|p| p.rotated(phi), phi)
    }

    /// Reverses the orientation of every curve. Only meaningful for closed
    /// curves and drops; junction roles would swap otherwise.
    pub fn reversed(&self) -> Self {
        Self {
            curves: self.curves.iter().map(DiscreteCurve::reversed).collect(),
            ..self.clone()
        }
    }

    /// Directions `[0, a1, a1 + a2]` of the three curves around a triple junction.
    pub fn slot_offsets(&self) -> [f64; 3] {
        match (self.kind, self.angles) {
            (NetworkKind::GeneralizedTheta, Some([a1, a2, _])) => [0.0, a1, a1 + a2],
            _ => [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0],
        }
    }

    /// Unit vector leaving the junction along curve `i` at the given end.
    pub fn outgoing_tangent(&self, i: usize, end: CurveEnd) -> Result<Point2> {
        let pts = self.curves[i].points();
        let (a, b) = match end {
            CurveEnd::Start => (pts[0], pts[1]),
            CurveEnd::End => (pts[pts.len() - 1], pts[pts.len() - 2]),
        };
        let d = b - a;
        let len = d.norm();
        if len == 0.0 {
            return Err(Error::InvalidCurve(format!(
                "curve {i} has a zero-length end edge"
            )));
        }
        Ok(d * (1.0 / len))
    }

    /// Orientation (`+1` or `-1`) of a triple junction that best matches the
    /// curve tangents, together with the resulting angle defect.
    pub fn junction_orientation(&self, junction: usize) -> Result<(f64, f64)> {
        let end = if junction == 0 {
            CurveEnd::Start
        } else {
            CurveEnd::End
        };
        let frame = self.junctions[junction].frame_angle;
        let offsets = self.slot_offsets();
        let mut best = (1.0, f64::INFINITY);
        for sigma in [1.0, -1.0] {
            let mut defect: f64 = 0.0;
            for (i, off) in offsets.iter().enumerate() {
                let t = self.outgoing_tangent(i, end)?;
                defect = defect.max(angle_distance(t.angle(), frame + sigma * off));
            }
            if defect < best.1 {
                best = (sigma, defect);
            }
        }
        Ok(best)
    }

    /// Outgoing directions at the four-point of a two-curve network, in the
    /// order start 0, end 0, start 1, end 1.
    pub fn four_point_tangents(&self) -> Result<[Point2; 4]> {
        Ok([
            self.outgoing_tangent(0, CurveEnd::Start)?,
            self.outgoing_tangent(0, CurveEnd::End)?,
            self.outgoing_tangent(1, CurveEnd::Start)?,
            self.outgoing_tangent(1, CurveEnd::End)?,
        ])
    }

    /// Offsets (multiples of pi/3) of the four outgoing directions of a
    /// degenerate Theta-network relative to its frame angle. This records
    /// which pairing of 120 and 60 degree angles the network uses.
    pub fn four_point_offsets(&self) -> Result<[f64; 4]> {
        let frame = self.junctions[0].frame_angle;
        let t = self.four_point_tangents()?;
        Ok(t.map(|v| {
            let units = (wrap_angle(v.angle() - frame) / FRAC_PI_3).round();
            units * FRAC_PI_3
        }))
    }

    /// Structural checks that do not depend on tolerances.
    pub fn check_structure(&self) -> Result<()> {
        let kind = self.kind;
        if self.curves.len() != kind.curve_count() {
            return Err(Error::InvalidInput(format!(
                "{kind} network needs {} curves, got {}",
                kind.curve_count(),
                self.curves.len()
            )));
        }
        if self.junctions.len() != kind.junction_count() {
            return Err(Error::InvalidInput(format!(
                "{kind} network needs {} junctions, got {}",
                kind.junction_count(),
                self.junctions.len()
            )));
        }
        for (i, c) in self.curves.iter().enumerate() {
            let want_closed = kind == NetworkKind::Closed;
            if c.is_closed() != want_closed {
                return Err(Error::InvalidInput(format!(
                    "curve {i} must be {}",
                    if want_closed { "closed" } else { "open" }
                )));
            }
            if c.len() < 3 {
                return Err(Error::InvalidInput(format!("curve {i} has fewer than 3 points")));
            }
        }
        match (kind, self.angles) {
            (NetworkKind::GeneralizedTheta, None) => {
                return Err(Error::Validation("generalized network without angles".into()))
            }
            (NetworkKind::GeneralizedTheta, Some(a)) => {
                if a.iter().any(|&x| !(x > 0.0 && x < 2.0 * PI)) {
                    return Err(Error::Validation(format!(
                        "prescribed angles must lie in (0, 2pi): {a:?}"
                    )));
                }
                let sum: f64 = a.iter().sum();
                if (sum - 2.0 * PI).abs() > 1e-9 {
                    return Err(Error::Validation(format!(
                        "prescribed angles sum to {sum}, expected 2pi"
                    )));
                }
            }
            (_, Some(_)) => {
                return Err(Error::InvalidInput(format!(
                    "angles are only allowed on generalized networks, not {kind}"
                )))
            }
            _ => {}
        }
        Ok(())
    }
}

/// Checks incidence and angle conditions for the network's kind.
pub fn validate(network: &Network, tol_pos: f64, tol_ang: f64) -> Result<ValidationReport> {
    if !(tol_pos > 0.0 && tol_ang > 0.0) {
        return Err(Error::InvalidConfig("tolerances must be positive".into()));
    }
    network.check_structure()?;
    let mut issues = Vec::new();
    let mut gap: f64 = 0.0;
    let mut defect: f64 = 0.0;
    let curves = network.curves();

    match network.kind() {
        NetworkKind::Closed => {}
        NetworkKind::Drop | NetworkKind::DoubleDrop | NetworkKind::DegenerateTheta => {
            let p = network.junctions()[0].position;
            for c in curves {
                gap = gap.max(c.first().distance(p)).max(c.last().distance(p));
            }
            if network.kind() == NetworkKind::DegenerateTheta {
                defect = four_point_defect(network)?;
            }
        }
        NetworkKind::Theta | NetworkKind::GeneralizedTheta => {
            let (p, q) = (network.junctions()[0].position, network.junctions()[1].position);
            for c in curves {
                gap = gap.max(c.first().distance(p)).max(c.last().distance(q));
            }
            for j in 0..2 {
                defect = defect.max(network.junction_orientation(j)?.1);
            }
        }
    }
    if gap > tol_pos {
        issues.push(format!("junction gap {gap:.3e} exceeds {tol_pos:.3e}"));
    }
    if defect > tol_ang {
        issues.push(format!("angle defect {defect:.3e} exceeds {tol_ang:.3e}"));
    }
    Ok(ValidationReport {
        valid: issues.is_empty(),
        junction_gap: gap,
        angle_defect: defect,
        issues,
    })
}

/// Validation with the default tolerances.
pub fn validate_default(network: &Network) -> Result<ValidationReport> {
    let tol_pos = DEFAULT_TOL_POS_REL * network.bbox_diameter().max(1.0);
    validate(network, tol_pos, DEFAULT_TOL_ANG)
}

/// Deviation of the four outgoing directions from alternating gaps of
/// 60 and 120 degrees, combined with the frame mismatch of curve 0.
fn four_point_defect(network: &Network) -> Result<f64> {
    let t = network.four_point_tangents()?;
    let mut angles: Vec<f64> = t.iter().map(|v| v.angle().rem_euclid(2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let gaps: Vec<f64> = (0..4)
        .map(|i| {
            let next = if i == 3 { angles[0] + 2.0 * PI } else { angles[i + 1] };
            next - angles[i]
        })
        .collect();
    let pattern = |phase: usize| {
        (0..4)
            .map(|i| {
                let want = if (i + phase).is_multiple_of(2) { FRAC_PI_3 } else { 2.0 * FRAC_PI_3 };
                (gaps[i] - want).abs()
            })
            .fold(0.0, f64::max)
    };
    let frame = angle_distance(t[0].angle(), network.junctions()[0].frame_angle);
    Ok(pattern(0).min(pattern(1)).max(frame))
}

// ---------------------------------------------------------------------------
// Reference constructions
// ---------------------------------------------------------------------------

fn check_count(n: usize, min: usize) -> Result<()> {
    if n < min {
        Err(Error::InvalidConfig(format!("need at least {min} points, got {n}")))
    } else {
        Ok(())
    }
}

/// Regular `n`-gon on the circle of radius `r`, counterclockwise.
pub fn make_circle(r: f64, n: usize) -> Result<Network> {
    if !(r > 0.0) {
        return Err(Error::InvalidConfig(format!("radius must be positive, got {r}")));
    }
    check_count(n, 8)?;
    let pts = (0..n)
        .map(|i| Point2::from_angle(2.0 * PI * i as f64 / n as f64) * r)
        .collect();
    Ok(Network::closed_curve(DiscreteCurve::closed(pts)?))
}

/// Ellipse with semi-axes `a`, `b`, resampled to `n` equal chords.
pub fn make_ellipse(a: f64, b: f64, n: usize) -> Result<Network> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidConfig("semi-axes must be positive".into()));
    }
    check_count(n, 8)?;
    let fine = 16 * n;
    let pts = (0..fine)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / fine as f64;
            Point2::new(a * t.cos(), b * t.sin())
        })
        .collect();
    let curve = resample_uniform(&DiscreteCurve::closed(pts)?, n)?;
    Ok(Network::closed_curve(curve))
}

/// Radius of the double bubble with least energy, `sqrt(8pi / (3sqrt3 + 8pi))`.
pub fn optimal_bubble_radius() -> f64 {
    let s3 = 3f64.sqrt();
    (8.0 * PI / (3.0 * s3 + 8.0 * PI)).sqrt()
}

/// Energy of the optimally rescaled standard double bubble,
/// `(2/3) sqrt(8pi (8pi + 3 sqrt3))`.
pub fn double_bubble_energy() -> f64 {
    2.0 / 3.0 * (8.0 * PI * (8.0 * PI + 3.0 * 3f64.sqrt())).sqrt()
}

/// Closed form energy of the optimally rescaled two-arc bubble whose arcs
/// meet the middle segment at angles `a1` and `a2`.
pub fn generalized_bubble_energy(a1: f64, a2: f64) -> Result<f64> {
    if !(a1 > 0.0 && a1 <= a2 && a1 + a2 < 2.0 * PI) {
        return Err(Error::InvalidInput(format!(
            "need 0 < a1 <= a2 and a1 + a2 < 2pi, got ({a1}, {a2})"
        )));
    }
    let (s1, s2) = (a1.sin(), a2.sin());
    if s1.abs() < 1e-12 || s2.abs() < 1e-12 {
        return Err(Error::SingularAngle(format!("sin vanishes at ({a1}, {a2})")));
    }
    let first = a1 + a2 * s2 / s1;
    let second = a1 + a2 * s1 / s2 + s1;
    if !(first > 0.0 && second > 0.0) {
        return Err(Error::SingularAngle(format!(
            "closed form has no real value at ({a1}, {a2})"
        )));
    }
    Ok(4.0 * first.sqrt() * second.sqrt())
}

/// Open polygon with `m` equal edges from `from` to `to` whose first edge
/// points along `theta0` and last edge along `theta0 + turning`.
///
/// Interior vertices turn by `turning / m`, the two vertices next to the ends
/// by one and a half times that, matching their longer dual cells. The
/// discrete curvature is therefore constant along the whole polygon.
fn polygonal_arc(from: Point2, to: Point2, theta0: f64, turning: f64, m: usize) -> Result<Vec<Point2>> {
    if m < 3 {
        return Err(Error::InvalidConfig("an arc needs at least 3 edges".into()));
    }
    let delta = turning / m as f64;
    let dirs: Vec<f64> = (0..m)
        .map(|j| match j {
            0 => theta0,
            j if j == m - 1 => theta0 + turning,
            j => theta0 + (j as f64 + 0.5) * delta,
        })
        .collect();
    let chord = to - from;
    let mid = theta0 + 0.5 * turning;
    let reach: f64 = dirs.iter().map(|&t| (t - mid).cos()).sum();
    if !(reach > 0.0) || angle_distance(chord.angle(), mid) > 1e-9 {
        return Err(Error::ConstructionFailed(format!(
            "arc with turning {turning} cannot join the given points"
        )));
    }
    let h = chord.norm() / reach;
    let mut pts = Vec::with_capacity(m + 1);
    let mut p = from;
    pts.push(p);
    for &t in &dirs {
        p += Point2::from_angle(t) * h;
        pts.push(p);
    }
    pts[m] = to;
    Ok(pts)
}

/// Two circular arcs and a segment between junctions at the origin and
/// `(-chord, 0)`. Curve 0 leaves the right junction at angle `a1` from the
/// segment, curve 1 is the segment, curve 2 leaves at angle `a2` on the other
/// side. Each curve has `n` points.
pub fn make_two_arc_bubble(a1: f64, a2: f64, chord: f64, n: usize) -> Result<Network> {
    check_count(n, 4)?;
    if !(a1 > 0.0 && a1 < PI && a2 > 0.0 && a2 < PI) {
        return Err(Error::InvalidInput(format!(
            "arc angles must lie in (0, pi), got ({a1}, {a2})"
        )));
    }
    if !(chord > 0.0) {
        return Err(Error::InvalidConfig("chord must be positive".into()));
    }
    let p = Point2::ORIGIN;
    let q = Point2::new(-chord, 0.0);
    let m = n - 1;
    let upper = polygonal_arc(p, q, PI - a1, 2.0 * a1, m)?;
    let lower = polygonal_arc(p, q, PI + a2, -2.0 * a2, m)?;
    let segment = (0..n).map(|i| p + (q - p) * (i as f64 / m as f64)).collect();
    let is_standard = (a1 - 2.0 * PI / 3.0).abs() < 1e-15 && (a2 - 2.0 * PI / 3.0).abs() < 1e-15;
    let (kind, angles) = if is_standard {
        (NetworkKind::Theta, None)
    } else {
        (NetworkKind::GeneralizedTheta, Some([a1, a2, 2.0 * PI - a1 - a2]))
    };
    Ok(Network::from_parts(
        kind,
        vec![
            DiscreteCurve::open(upper)?,
            DiscreteCurve::open(segment)?,
            DiscreteCurve::open(lower)?,
        ],
        vec![
            Junction {
                position: p,
                frame_angle: PI - a1,
            },
            Junction {
                position: q,
                frame_angle: a1,
            },
        ],
        angles,
    ))
}

/// Standard double bubble of radius `r`: a segment of length `sqrt3 r` and
/// two arcs of radius `r` spanning `4pi/3`, all meeting at 120 degrees. The
/// right junction sits at the origin with tangents `(1/2, sqrt3/2)`,
/// `(-1, 0)` and `(1/2, -sqrt3/2)`.
pub fn make_standard_double_bubble(r: f64, n: usize) -> Result<Network> {
    if !(r > 0.0) {
        return Err(Error::InvalidConfig(format!("radius must be positive, got {r}")));
    }
    let a = 2.0 * PI / 3.0;
    make_two_arc_bubble(a, a, 3f64.sqrt() * r, n)
}

/// Optimally rescaled two-arc bubble for the prescribed angles.
pub fn make_generalized_bubble(a1: f64, a2: f64, n: usize) -> Result<Network> {
    let s = a1 * a1.sin() + a2 * a2.sin();
    let t = 1.0 + a1 / a1.sin() + a2 / a2.sin();
    if !(s > 0.0 && t > 0.0) {
        return Err(Error::SingularAngle(format!("no two-arc bubble for ({a1}, {a2})")));
    }
    make_two_arc_bubble(a1, a2, 2.0 * (s / t).sqrt(), n)
}

/// Teardrop with its corner at the origin (a right angle), `n` points,
/// roughly `size` across.
pub fn make_teardrop(size: f64, n: usize) -> Result<Network> {
    check_count(n, 8)?;
    let fine = 64 * n;
    let pts: Vec<Point2> = (0..=fine)
        .map(|i| {
            let t = 2.0 * PI * i as f64 / fine as f64;
            Point2::new(t.cos() - 1.0, t.sin() * (0.5 * t).sin()) * (0.5 * size)
        })
        .collect();
    let mut pts = pts;
    pts[fine] = Point2::ORIGIN;
    let curve = resample_uniform(&DiscreteCurve::open(pts)?, n - 1)?;
    Ok(Network::drop_curve(curve))
}

/// The two-drop network `{g, -g(1 - t)}` obtained by point reflection of a
/// drop through its closure point.
pub fn make_symmetric_double_drop(drop: &DiscreteCurve) -> Result<Network> {
    let p = drop.first();
    let mirrored: Vec<Point2> = drop.points().iter().rev().map(|&q| p * 2.0 - q).collect();
    Ok(Network::from_parts(
        NetworkKind::DoubleDrop,
        vec![drop.clone(), DiscreteCurve::open(mirrored)?],
        vec![Junction {
            position: p,
            frame_angle: 0.0,
        }],
        None,
    ))
}

/// Symmetric degenerate Theta-network: two point-symmetric drops through the
/// origin whose tangents there point at 60, 120, 240 and 300 degrees.
///
/// Each drop is traced from a tangent angle that runs from 60 to 300 degrees
/// with an odd number `m` of equal edges (`m = n - 2` rounded down to odd),
/// so the middle edge is exactly horizontal. The middle edge is then split at
/// its midpoint, leaving a flat vertex at the top of the upper drop and at
/// the bottom of the lower one. The result is optimally rescaled.
pub fn make_degenerate_figure_eight(n: usize) -> Result<Network> {
    check_count(n, 9)?;
    let mut m = n - 2;
    if m.is_multiple_of(2) {
        m -= 1;
    }
    let spread = 2.0 * PI / 3.0;
    let phi = |u: f64, beta: f64| {
        if beta < 1e-9 {
            spread * u
        } else {
            spread * (beta * u).tanh() / beta.tanh()
        }
    };
    let nodes: Vec<f64> = (0..m).map(|j| -1.0 + 2.0 * j as f64 / (m - 1) as f64).collect();
    // x-closure of the drop: sum of cos(phi) must vanish.
    let closure = |beta: f64| nodes.iter().map(|&u| phi(u, beta).cos()).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 60.0);
    if closure(lo) <= 0.0 || closure(hi) >= 0.0 {
        return Err(Error::ConstructionFailed("cannot close drop".into()));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if closure(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let beta = 0.5 * (lo + hi);
    let mid = (m - 1) / 2;
    let h = 1.0 / m as f64;
    let mut pts = Vec::with_capacity(m + 2);
    let mut p = Point2::ORIGIN;
    pts.push(p);
    for (j, &u) in nodes.iter().enumerate() {
        let dir = if j == mid {
            Point2::new(-1.0, 0.0)
        } else {
            Point2::from_angle(PI + phi(u, beta))
        };
        if j == mid {
            pts.push(p + dir * (0.5 * h));
        }
        p += dir * h;
        pts.push(p);
    }
    let last = pts.len() - 1;
    pts[last] = Point2::ORIGIN;
    let upper = DiscreteCurve::open(pts)?;
    let mut net = make_symmetric_double_drop(&upper)?;
    net.kind = NetworkKind::DegenerateTheta;
    net.junctions[0].frame_angle = FRAC_PI_3;
    let (_, rescaled) = crate::energy::optimal_rescale(&net)?;
    Ok(rescaled)
}

/// Closed figure-eight (lemniscate of Gerono) with `n` points.
pub fn make_lemniscate(size: f64, n: usize) -> Result<Network> {
    check_count(n, 8)?;
    let pts = (0..n)
        .map(|i| {
            let t = 2.0 * PI * (i as f64 + 0.5) / n as f64;
            Point2::new(t.sin(), t.sin() * t.cos()) * size
        })
        .collect();
    Ok(Network::closed_curve(DiscreteCurve::closed(pts)?))
}
