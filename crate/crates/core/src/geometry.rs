//! Discrete planar curves.
//!
//! A [`DiscreteCurve`] is an ordered list of points, either open or closed.
//! Curvature is vertex based: the signed turning angle between the two
//! incident edges divided by the dual length (half the sum of the incident
//! edge lengths). On open curves the end edges carry no vertex of their own
//! and are absorbed whole into the neighbouring dual cell, so the dual cells
//! always partition the curve. Summing turning angles is exact, which keeps
//! the total-curvature identities sharp at every resolution.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at angle `theta` from the positive x axis.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Self { x: c, y: s }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Self {
        Self {
            x: -self.y,
            y: self.x,
        }
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotated(self, phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl SubAssign for Point2 {
    fn sub_assign(&mut self, o: Point2) {
        self.x -= o.x;
        self.y -= o.y;
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, s: f64) -> Point2 {
        Point2::new(self.x / s, self.y / s)
    }
}

impl Mul<Point2> for f64 {
    type Output = Point2;
    fn mul(self, p: Point2) -> Point2 {
        p * self
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// Signed angle turning `from` into `to`, in `(-pi, pi]`.
pub fn turning_angle(from: Point2, to: Point2) -> f64 {
    from.cross(to).atan2(from.dot(to))
}

/// Wrap an angle into `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    r
}

/// Unsigned distance between two directions given as angles, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    wrap_angle(a - b).abs()
}

/// Ordered point sequence approximating a regular planar curve.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    points: Vec<Point2>,
    closed: bool,
}

/// Curvature sample at one vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexCurvature {
    pub index: usize,
    /// Signed turning angle, positive for counterclockwise turning.
    pub turning: f64,
    pub dual_length: f64,
    pub kappa: f64,
}

impl DiscreteCurve {
    /// Builds a curve, rejecting non-finite coordinates and fewer than two points.
    pub fn new(points: Vec<Point2>, closed: bool) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidCurve(format!(
                "need at least 2 points, got {}",
                points.len()
            )));
        }
        if let Some(i) = points.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve(format!("non-finite point at index {i}")));
        }
        Ok(Self { points, closed })
    }

    pub fn open(points: Vec<Point2>) -> Result<Self> {
        Self::new(points, false)
    }

    pub fn closed(points: Vec<Point2>) -> Result<Self> {
        Self::new(points, true)
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    #[cfg(test)]
    pub(crate) fn points_mut(&mut self) -> &mut [Point2] {
        &mut self.points
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn first(&self) -> Point2 {
        self.points[0]
    }

    pub fn last(&self) -> Point2 {
        self.points[self.points.len() - 1]
    }

    pub fn edge_count(&self) -> usize {
        if self.closed {
            self.points.len()
        } else {
            self.points.len() - 1
        }
    }

    /// Edge vector `p[i+1] - p[i]`, wrapping for closed curves.
    pub fn edge(&self, i: usize) -> Point2 {
        let n = self.points.len();
        self.points[(i + 1) % n] - self.points[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = Point2> + '_ {
        (0..self.edge_count()).map(move |i| self.edge(i))
    }

    pub fn map_points(&self, f: impl Fn(Point2) -> Point2) -> Self {
        Self {
            points: self.points.iter().map(|&p| f(p)).collect(),
            closed: self.closed,
        }
    }

    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self {
            points,
            closed: self.closed,
        }
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges().map(Point2::norm).fold(0.0, f64::max)
    }

    /// Diameter of the axis-aligned bounding box.
    pub fn bbox_diameter(&self) -> f64 {
        bbox_diameter(self.points.iter().copied())
    }

    /// First and last unit tangents of an open curve.
    pub fn end_tangents(&self) -> Result<(Point2, Point2)> {
        let t = edge_tangents(self)?;
        Ok((t[0], t[t.len() - 1]))
    }
}

pub(crate) fn bbox_diameter(points: impl Iterator<Item = Point2>) -> f64 {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    if lo.x > hi.x {
        return 0.0;
    }
    (hi - lo).norm()
}

/// Sum of segment lengths.
pub fn polyline_length(curve: &DiscreteCurve) -> f64 {
    curve.edges().map(Point2::norm).sum()
}

/// One unit tangent per edge.
pub fn edge_tangents(curve: &DiscreteCurve) -> Result<Vec<Point2>> {
    curve
        .edges()
        .enumerate()
        .map(|(i, e)| {
            let len = e.norm();
            if len == 0.0 || !len.is_finite() {
                Err(Error::InvalidCurve(format!("zero-length edge at index {i}")))
            } else {
                Ok(e * (1.0 / len))
            }
        })
        .collect()
}

/// Indices of the vertices that carry curvature: interior vertices of open
/// curves, every vertex of closed curves.
pub fn curvature_vertices(curve: &DiscreteCurve) -> std::ops::Range<usize> {
    if curve.is_closed() {
        0..curve.len()
    } else {
        1..curve.len() - 1
    }
}

/// Weights of the previous and next edge length in the dual length of
/// vertex `i`.
pub fn dual_weights(curve: &DiscreteCurve, i: usize) -> (f64, f64) {
    if curve.is_closed() {
        return (0.5, 0.5);
    }
    let wa = if i == 1 { 1.0 } else { 0.5 };
    let wb = if i + 2 == curve.len() { 1.0 } else { 0.5 };
    (wa, wb)
}

/// Turning angle over dual length at every curvature-carrying vertex.
pub fn vertex_curvature(curve: &DiscreteCurve) -> Result<Vec<VertexCurvature>> {
    vertex_curvature_excluding(curve, &[])
}

/// Like [`vertex_curvature`], skipping designated corner vertices.
pub fn vertex_curvature_excluding(
    curve: &DiscreteCurve,
    corners: &[usize],
) -> Result<Vec<VertexCurvature>> {
    let n = curve.len();
    if curve.is_closed() && n < 3 {
        return Err(Error::InvalidCurve("closed curve needs 3 points".into()));
    }
    let mut out = Vec::with_capacity(n);
    for i in curvature_vertices(curve) {
        if corners.contains(&i) {
            continue;
        }
        let prev = curve.edge((i + n - 1) % n);
        let next = curve.edge(i);
        let (a, b) = (prev.norm(), next.norm());
        if a == 0.0 || b == 0.0 {
            return Err(Error::InvalidCurve(format!(
                "zero-length edge next to vertex {i}"
            )));
        }
        let turning = turning_angle(prev, next);
        let (wa, wb) = dual_weights(curve, i);
        let dual_length = wa * a + wb * b;
        out.push(VertexCurvature {
            index: i,
            turning,
            dual_length,
            kappa: turning / dual_length,
        });
    }
    Ok(out)
}

/// Angle in `[0, pi]` between two unit tangents.
pub fn external_angle(tangent_in: Point2, tangent_out: Point2) -> Result<f64> {
    for (name, t) in [("tangent_in", tangent_in), ("tangent_out", tangent_out)] {
        if !t.is_finite() || (t.norm() - 1.0).abs() > 1e-6 {
            return Err(Error::ContractViolation(format!(
                "{name} is not a unit vector (norm {})",
                t.norm()
            )));
        }
    }
    Ok(tangent_in.dot(tangent_out).clamp(-1.0, 1.0).acos())
}

/// Resample so that all chords are equal and every new point lies on the
/// input polyline.
///
/// Open curves get `n + 1` points with both endpoints kept; closed curves get
/// `n` points starting at the original first point. Because the spacing is in
/// chord length, resampling an already resampled curve with the same `n`
/// reproduces it. The total length is preserved exactly when the input
/// vertices fall on the new samples and shrinks by the cut corners otherwise.
pub fn resample_uniform(curve: &DiscreteCurve, n: usize) -> Result<DiscreteCurve> {
    if n < 3 {
        return Err(Error::InvalidConfig(format!("resample count {n} < 3")));
    }
    let total = polyline_length(curve);
    if !(total > 0.0) {
        return Err(Error::InvalidCurve("zero-length curve".into()));
    }
    let walker = ChordWalker::new(curve);

    // Arclength reached after n chord steps is nondecreasing in the chord.
    let (mut lo, mut hi) = (0.0, total / n as f64);
    let mut best = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if walker.reach(mid, n) < total {
            lo = mid;
        } else {
            hi = mid;
            best = mid;
        }
    }
    let chord = if walker.reach(lo, n) >= total { lo } else { best };
    let mut points = walker.samples(chord, n);
    if curve.is_closed() {
        points.truncate(n);
    } else {
        points.truncate(n + 1);
        if let Some(last) = points.last_mut() {
            *last = curve.last();
        }
    }
    DiscreteCurve::new(points, curve.is_closed())
}

/// Round-off allowance on the edge parameter when walking chords.
const PARAM_SLACK: f64 = 1e-12;

struct ChordWalker<'a> {
    curve: &'a DiscreteCurve,
    cumulative: Vec<f64>,
}

impl<'a> ChordWalker<'a> {
    fn new(curve: &'a DiscreteCurve) -> Self {
        let mut cumulative = Vec::with_capacity(curve.edge_count() + 1);
        let mut s = 0.0;
        cumulative.push(0.0);
        for e in curve.edges() {
            s += e.norm();
            cumulative.push(s);
        }
        Self { curve, cumulative }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    /// Next point at chord distance `chord` from `(edge, t)`, walking forward.
    /// Returns `None` when the walk leaves the polyline.
    fn step(&self, edge: usize, t: f64, chord: f64) -> Option<(usize, f64)> {
        let start = self.curve.points()[edge] + self.curve.edge(edge) * t;
        let m = self.curve.edge_count();
        let mut t0 = t;
        for k in edge..m {
            let a = self.curve.points()[k];
            let d = self.curve.edge(k);
            let dd = d.norm_sq();
            if dd == 0.0 {
                t0 = 0.0;
                continue;
            }
            // |a + u d - start|^2 = chord^2
            let w = a - start;
            let bq = 2.0 * w.dot(d);
            let cq = w.norm_sq() - chord * chord;
            let disc = bq * bq - 4.0 * dd * cq;
            if disc >= 0.0 {
                let u = (-bq + disc.sqrt()) / (2.0 * dd);
                // a target on a vertex may land just outside both edges
                if u >= t0 - PARAM_SLACK && u <= 1.0 + PARAM_SLACK {
                    return Some((k, u.clamp(t0, 1.0)));
                }
            }
            t0 = 0.0;
        }
        None
    }

    fn arclength(&self, edge: usize, t: f64) -> f64 {
        self.cumulative[edge] + t * (self.cumulative[edge + 1] - self.cumulative[edge])
    }

    /// Arclength position after `n` steps; overshoot counts as full steps.
    fn reach(&self, chord: f64, n: usize) -> f64 {
        let (mut e, mut t) = (0usize, 0.0);
        for i in 0..n {
            match self.step(e, t, chord) {
                Some((e2, t2)) => {
                    e = e2;
                    t = t2;
                }
                None => return self.total() + (n - i) as f64 * chord,
            }
        }
        self.arclength(e, t)
    }

    fn samples(&self, chord: f64, n: usize) -> Vec<Point2> {
        let pts = self.curve.points();
        let mut out = Vec::with_capacity(n + 1);
        out.push(pts[0]);
        let (mut e, mut t) = (0usize, 0.0);
        for _ in 0..n {
            match self.step(e, t, chord) {
                Some((e2, t2)) => {
                    e = e2;
                    t = t2;
                    out.push(pts[e] + self.curve.edge(e) * t);
                }
                None => {
                    out.push(if self.curve.is_closed() {
                        pts[0]
                    } else {
                        self.curve.last()
                    });
                    break;
                }
            }
        }
        out
    }
}
