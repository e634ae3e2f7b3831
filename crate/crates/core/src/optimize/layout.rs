//! Degrees of freedom of a network and the map back to point coordinates.
//!
//! Junction positions and frame angles are shared variables. The endpoint of
//! a curve at a triple junction (or four-point) coincides with the junction
//! `P`, and its neighbour is `P + a u` with `u = dir(frame + offset)` and
//! `a = lambda u . (p_2 - P)`, a fixed fraction of the projection of the next
//! free point onto the frame ray. The fraction is read off the input network
//! (one half for uniform spacing). The tangent condition therefore holds
//! exactly for every value of the variables, and the first edge cannot
//! shrink independently of the curve.
//!
//! Free points are stored relative to a base point: the linear interpolation
//! of the two junction positions on a curve between junctions, the origin
//! otherwise. With [`Dof::Points`] a free point is two coordinates. With
//! [`Dof::NormalOffsets`] it is one scalar, the offset along a fixed normal
//! from its reference position, so points cannot slide along the curve.
//! Tangential sliding costs nothing on straight pieces and on curved ones
//! lowers the discrete energy only by clustering vertices, so descent in
//! point coordinates collapses edges or games the discretization. The
//! reference is the network the layout was built from; the minimizer
//! rebuilds it at every resampling, which is where spacing is restored.

use crate::energy::curve_energy_with_gradient;
use crate::error::{Error, Result};
use crate::geometry::{DiscreteCurve, Point2};
use crate::network::{Junction, Network, NetworkKind};

use super::precond::{CurveShape, Preconditioner};

/// How free points are stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dof {
    /// Both coordinates of every free point.
    Points,
    /// One normal offset per free point.
    NormalOffsets,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum EndSpec {
    /// Endpoint pinned, neighbour free.
    Fixed(Point2),
    /// Endpoint on junction `junction`, neighbour slaved along `frame + offset`
    /// at fraction `ratio` of the projected next point.
    Slaved {
        junction: usize,
        offset: f64,
        ratio: f64,
    },
}

#[derive(Debug, Clone)]
struct CurveLayout {
    n_points: usize,
    closed: bool,
    start: Option<EndSpec>,
    end: Option<EndSpec>,
    /// Index in `x` of the first free point.
    first: usize,
    /// Reference position (minus the base point) and unit normal of each
    /// free point, for normal offsets.
    reference: Option<Vec<(Point2, Point2)>>,
}

impl CurveLayout {
    /// Variables per free point.
    fn stride(&self) -> usize {
        if self.reference.is_some() {
            1
        } else {
            2
        }
    }

    /// Range of point indices stored in `x`.
    fn free_points(&self) -> std::ops::Range<usize> {
        if self.closed {
            return 0..self.n_points;
        }
        let lo = match self.start {
            Some(EndSpec::Slaved { .. }) => 2,
            _ => 1,
        };
        let hi = match self.end {
            Some(EndSpec::Slaved { .. }) => self.n_points - 2,
            _ => self.n_points - 1,
        };
        lo..hi
    }
}

/// Variables of one network kind. With `mirror` set the layout describes
/// only the first curve of a symmetric double drop and the second is its
/// point reflection through the shared endpoint.
#[derive(Debug, Clone)]
pub struct Layout {
    template: Network,
    curves: Vec<CurveLayout>,
    /// Index of `(x, y, frame)` for every junction carrying variables.
    junctions: Vec<usize>,
    mirror: Option<Point2>,
    dim: usize,
}

#[derive(Debug, Clone)]
pub struct Evaluation {
    pub energy: f64,
    pub elastic: f64,
    pub length: f64,
    pub gradient: Vec<f64>,
}

fn dir(theta: f64) -> Point2 {
    Point2::from_angle(theta)
}

/// Fraction of the projection of `after` at which `next` sits, kept away
/// from 0 and 1 so a badly spaced input cannot pin a collapsed edge.
fn slave_ratio(u: Point2, p: Point2, next: Point2, after: Point2) -> f64 {
    let ratio = u.dot(next - p) / u.dot(after - p);
    if ratio.is_finite() {
        ratio.clamp(0.1, 0.9)
    } else {
        0.5
    }
}

impl Layout {
    pub fn for_network(network: &Network, dof: Dof) -> Result<Self> {
        network.check_structure()?;
        match network.kind() {
            NetworkKind::Closed => Ok(Self::unconstrained(network, None, dof)),
            NetworkKind::Drop | NetworkKind::DoubleDrop => {
                let p = network.junctions()[0].position;
                Ok(Self::unconstrained(network, Some(p), dof))
            }
            NetworkKind::Theta | NetworkKind::GeneralizedTheta => Self::triple(network, dof),
            NetworkKind::DegenerateTheta => Self::four_point(network, dof),
        }
    }

    /// Symmetric double drop: only the first curve is free.
    pub fn mirrored(network: &Network, dof: Dof) -> Result<Self> {
        if network.kind() != NetworkKind::DoubleDrop {
            return Err(Error::InvalidInput(format!(
                "expected a double drop, got {}",
                network.kind()
            )));
        }
        network.check_structure()?;
        let p = network.junctions()[0].position;
        let c = &network.curves()[1];
        let expect = network.curves()[0].points().iter().rev().map(|&q| p * 2.0 - q);
        let defect = c
            .points()
            .iter()
            .zip(expect)
            .fold(0.0_f64, |m, (a, b)| m.max(a.distance(b)));
        let tol = 1e-9 * network.bbox_diameter().max(1.0);
        if c.len() != network.curves()[0].len() || defect > tol {
            return Err(Error::InvalidInput(format!(
                "double drop is not point symmetric (defect {defect:.3e})"
            )));
        }
        let n = network.curves()[0].len();
        Ok(Self {
            template: network.clone(),
            curves: vec![CurveLayout {
                n_points: n,
                closed: false,
                start: Some(EndSpec::Fixed(p)),
                end: Some(EndSpec::Fixed(p)),
                first: 0,
                reference: (dof == Dof::NormalOffsets)
                    .then(|| Self::reference(network.curves()[0].points(), 1..n - 1, |_| Point2::ORIGIN)),
            }],
            junctions: Vec::new(),
            mirror: Some(p),
            dim: if dof == Dof::NormalOffsets { n - 2 } else { 2 * (n - 2) },
        })
    }

    fn unconstrained(network: &Network, pin: Option<Point2>, dof: Dof) -> Self {
        let mut curves = Vec::new();
        let mut dim = 0;
        for c in network.curves() {
            let spec = pin.map(EndSpec::Fixed);
            let mut layout = CurveLayout {
                n_points: c.len(),
                closed: c.is_closed(),
                start: spec,
                end: spec,
                first: dim,
                reference: None,
            };
            if dof == Dof::NormalOffsets {
                layout.reference = Some(Self::reference(c.points(), layout.free_points(), |_| Point2::ORIGIN));
            }
            dim += layout.stride() * layout.free_points().len();
            curves.push(layout);
        }
        Self {
            template: network.clone(),
            curves,
            junctions: Vec::new(),
            mirror: None,
            dim,
        }
    }

    fn slaved_layout(
        network: &Network,
        ends: Vec<(usize, f64, usize, f64)>,
        n_junctions: usize,
        dof: Dof,
    ) -> Result<Self> {
        let mut dim = 3 * n_junctions;
        let junctions = (0..n_junctions).map(|j| 3 * j).collect();
        let mut curves = Vec::new();
        for (c, &(j0, o0, j1, o1)) in network.curves().iter().zip(&ends) {
            if c.len() < 5 {
                return Err(Error::InvalidInput(
                    "curves meeting at junctions need at least 5 points".into(),
                ));
            }
            let pts = c.points();
            let m = pts.len() - 1;
            let frame = |j: usize| network.junctions()[j].frame_angle;
            let start = EndSpec::Slaved {
                junction: j0,
                offset: o0,
                ratio: slave_ratio(dir(frame(j0) + o0), pts[0], pts[1], pts[2]),
            };
            let end = EndSpec::Slaved {
                junction: j1,
                offset: o1,
                ratio: slave_ratio(dir(frame(j1) + o1), pts[m], pts[m - 1], pts[m - 2]),
            };
            let mut layout = CurveLayout {
                n_points: c.len(),
                closed: false,
                start: Some(start),
                end: Some(end),
                first: dim,
                reference: None,
            };
            let (pa, pb) = (network.junctions()[j0].position, network.junctions()[j1].position);
            let n_points = layout.n_points;
            let base = |i: usize| {
                let s = i as f64 / (n_points - 1) as f64;
                pa * (1.0 - s) + pb * s
            };
            if dof == Dof::NormalOffsets {
                layout.reference = Some(Self::reference(pts, layout.free_points(), base));
            }
            dim += layout.stride() * layout.free_points().len();
            curves.push(layout);
        }
        Ok(Self {
            template: network.clone(),
            curves,
            junctions,
            mirror: None,
            dim,
        })
    }

    fn triple(network: &Network, dof: Dof) -> Result<Self> {
        let (s0, _) = network.junction_orientation(0)?;
        let (s1, _) = network.junction_orientation(1)?;
        let offsets = network.slot_offsets();
        let ends = (0..3)
            .map(|i| (0, s0 * offsets[i], 1, s1 * offsets[i]))
            .collect();
        Self::slaved_layout(network, ends, 2, dof)
    }

    fn four_point(network: &Network, dof: Dof) -> Result<Self> {
        let o = network.four_point_offsets()?;
        Self::slaved_layout(network, vec![(0, o[0], 0, o[1]), (0, o[2], 0, o[3])], 1, dof)
    }

    /// Anchors and unit normals of the points in `free`, anchors taken
    /// relative to `base`.
    fn reference(
        pts: &[Point2],
        free: std::ops::Range<usize>,
        base: impl Fn(usize) -> Point2,
    ) -> Vec<(Point2, Point2)> {
        let n = pts.len();
        free.map(|i| {
            let chord = pts[(i + 1) % n] - pts[(i + n - 1) % n];
            (pts[i] - base(i), chord.perp() / chord.norm())
        })
        .collect()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirror.is_some()
    }

    /// Variables of `network`. Slaved neighbours are not stored; decoding
    /// recomputes them, so a network whose neighbours are elsewhere (after
    /// resampling, say) is projected onto the constraint set.
    pub fn encode(&self, network: &Network) -> Vec<f64> {
        let mut x = vec![0.0; self.dim];
        for (j, &k) in self.junctions.iter().enumerate() {
            let junction = network.junctions()[j];
            x[k] = junction.position.x;
            x[k + 1] = junction.position.y;
            x[k + 2] = junction.frame_angle;
        }
        for (layout, curve) in self.curves.iter().zip(network.curves()) {
            let pts = curve.points();
            for (slot, i) in layout.free_points().enumerate() {
                let q = pts[i] - self.base(&x, layout, i);
                match &layout.reference {
                    Some(reference) => {
                        let (anchor, n) = reference[slot];
                        x[layout.first + slot] = n.dot(q - anchor);
                    }
                    None => {
                        x[layout.first + 2 * slot] = q.x;
                        x[layout.first + 2 * slot + 1] = q.y;
                    }
                }
            }
        }
        x
    }

    /// Junctions at both ends of a curve, if it runs between junctions.
    fn anchors(layout: &CurveLayout) -> Option<(usize, usize)> {
        match (layout.start, layout.end) {
            (Some(EndSpec::Slaved { junction: a, .. }), Some(EndSpec::Slaved { junction: b, .. })) => {
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Weight of the end junction in the base point of vertex `i`.
    fn base_weight(layout: &CurveLayout, i: usize) -> f64 {
        i as f64 / (layout.n_points - 1) as f64
    }

    /// Point that free vertex `i` is stored relative to. Reads junction
    /// variables only, which `encode` fills first.
    fn base(&self, x: &[f64], layout: &CurveLayout, i: usize) -> Point2 {
        match Self::anchors(layout) {
            Some((a, b)) => {
                let s = Self::base_weight(layout, i);
                self.junction(x, a).0 * (1.0 - s) + self.junction(x, b).0 * s
            }
            None => Point2::ORIGIN,
        }
    }

    fn junction(&self, x: &[f64], j: usize) -> (Point2, f64) {
        let k = self.junctions[j];
        (Point2::new(x[k], x[k + 1]), x[k + 2])
    }

    /// Endpoint and, when slaved, the neighbour computed from `next`, the
    /// free point after it.
    fn end_points(&self, x: &[f64], spec: EndSpec, next: Point2) -> (Point2, Option<Point2>) {
        match spec {
            EndSpec::Fixed(p) => (p, None),
            EndSpec::Slaved {
                junction,
                offset,
                ratio,
            } => {
                let (p, f) = self.junction(x, junction);
                let u = dir(f + offset);
                (p, Some(p + u * (ratio * u.dot(next - p))))
            }
        }
    }

    fn curve_points(&self, x: &[f64], layout: &CurveLayout) -> Vec<Point2> {
        let mut pts = vec![Point2::ORIGIN; layout.n_points];
        for i in layout.free_points() {
            pts[i] = self.free_point(x, layout, i);
        }
        if let Some(spec) = layout.start {
            let (p, q) = self.end_points(x, spec, pts[2]);
            pts[0] = p;
            if let Some(q) = q {
                pts[1] = q;
            }
        }
        if let Some(spec) = layout.end {
            let m = layout.n_points - 1;
            let (p, q) = self.end_points(x, spec, pts[m - 2]);
            pts[m] = p;
            if let Some(q) = q {
                pts[m - 1] = q;
            }
        }
        pts
    }

    fn mirror_points(p: Point2, pts: &[Point2]) -> Vec<Point2> {
        pts.iter().rev().map(|&q| p * 2.0 - q).collect()
    }

    fn free_point(&self, x: &[f64], layout: &CurveLayout, i: usize) -> Point2 {
        let slot = i - layout.free_points().start;
        let base = self.base(x, layout, i);
        match &layout.reference {
            Some(reference) => {
                let (anchor, n) = reference[slot];
                base + anchor + n * x[layout.first + slot]
            }
            None => {
                let k = layout.first + 2 * slot;
                base + Point2::new(x[k], x[k + 1])
            }
        }
    }

    /// Network described by `x`. Fails if a curve has coincident points.
    pub fn decode(&self, x: &[f64]) -> Result<Network> {
        let mut curves = Vec::with_capacity(self.template.curves().len());
        for layout in &self.curves {
            curves.push(DiscreteCurve::new(self.curve_points(x, layout), layout.closed)?);
        }
        if let Some(p) = self.mirror {
            let mirrored = Self::mirror_points(p, curves[0].points());
            curves.push(DiscreteCurve::open(mirrored)?);
        }
        let junctions = self
            .template
            .junctions()
            .iter()
            .enumerate()
            .map(|(j, old)| {
                if j < self.junctions.len() {
                    let (position, frame_angle) = self.junction(x, j);
                    Junction {
                        position,
                        frame_angle,
                    }
                } else {
                    *old
                }
            })
            .collect();
        Ok(Network::from_parts(
            self.template.kind(),
            curves,
            junctions,
            self.template.angles(),
        ))
    }

    /// Whether `x` keeps every slaved length positive and every edge nonzero.
    pub fn feasible(&self, x: &[f64]) -> bool {
        if x.iter().any(|v| !v.is_finite()) {
            return false;
        }
        for layout in &self.curves {
            let pts = self.curve_points(x, layout);
            let m = layout.n_points - 1;
            for (spec, after) in [(layout.start, 2), (layout.end, m - 2)] {
                if let Some(EndSpec::Slaved {
                    junction, offset, ..
                }) = spec
                {
                    let (p, f) = self.junction(x, junction);
                    if dir(f + offset).dot(pts[after] - p) <= 0.0 {
                        return false;
                    }
                }
            }
            let edges = if layout.closed { pts.len() } else { pts.len() - 1 };
            for i in 0..edges {
                if pts[i] == pts[(i + 1) % pts.len()] {
                    return false;
                }
            }
        }
        true
    }

    /// `F` and its gradient with respect to `x`; `None` outside the feasible set.
    pub fn evaluate(&self, x: &[f64]) -> Option<Evaluation> {
        if !self.feasible(x) {
            return None;
        }
        let mut grad = vec![0.0; self.dim];
        let mut elastic = 0.0;
        let mut length = 0.0;
        for layout in &self.curves {
            let pts = self.curve_points(x, layout);
            let curve = DiscreteCurve::new(pts.clone(), layout.closed).ok()?;
            let (e, l, mut g) = curve_energy_with_gradient(&curve, 1.0);
            elastic += e;
            length += l;
            if let Some(p) = self.mirror {
                let other = DiscreteCurve::open(Self::mirror_points(p, &pts)).ok()?;
                let (e2, l2, g2) = curve_energy_with_gradient(&other, 1.0);
                elastic += e2;
                length += l2;
                let m = pts.len() - 1;
                for (i, gi) in g.iter_mut().enumerate() {
                    *gi -= g2[m - i];
                }
            }
            self.pull_back(x, layout, &g, &mut grad);
        }
        let energy = elastic + length;
        if !energy.is_finite() {
            return None;
        }
        Some(Evaluation {
            energy,
            elastic,
            length,
            gradient: grad,
        })
    }

    /// Chain rule from point gradients `g` of one curve into `grad`.
    fn pull_back(&self, x: &[f64], layout: &CurveLayout, g: &[Point2], grad: &mut [f64]) {
        let free = layout.free_points();
        let mut gfree: Vec<Point2> = g[free.clone()].to_vec();
        let m = layout.n_points - 1;
        for (spec, tip, next, after) in [(layout.start, 0, 1, 2), (layout.end, m, m - 1, m - 2)] {
            if let Some(EndSpec::Slaved {
                junction,
                offset,
                ratio,
            }) = spec
            {
                let k = self.junctions[junction];
                let (p, f) = self.junction(x, junction);
                let u = dir(f + offset);
                let v = u.perp();
                let r = self.free_point(x, layout, after) - p;
                let a = ratio * u.dot(r);
                // q = p + a u, a = ratio u.r with r = p_after - p
                let gq = g[next];
                let gu = gq.dot(u);
                let gp = g[tip] + gq - u * (ratio * gu);
                grad[k] += gp.x;
                grad[k + 1] += gp.y;
                grad[k + 2] += a * gq.dot(v) + ratio * gu * v.dot(r);
                gfree[after - free.start] += u * (ratio * gu);
            }
        }
        let anchors = Self::anchors(layout);
        for (slot, (i, gi)) in free.zip(gfree).enumerate() {
            match &layout.reference {
                Some(reference) => grad[layout.first + slot] += gi.dot(reference[slot].1),
                None => {
                    grad[layout.first + 2 * slot] += gi.x;
                    grad[layout.first + 2 * slot + 1] += gi.y;
                }
            }
            if let Some((a, b)) = anchors {
                let s = Self::base_weight(layout, i);
                let (ka, kb) = (self.junctions[a], self.junctions[b]);
                grad[ka] += (1.0 - s) * gi.x;
                grad[ka + 1] += (1.0 - s) * gi.y;
                grad[kb] += s * gi.x;
                grad[kb + 1] += s * gi.y;
            }
        }
    }

    /// Curvature-operator preconditioner for the variables of this layout.
    pub(crate) fn preconditioner(&self) -> Preconditioner {
        let weight = if self.mirror.is_some() { 2.0 } else { 1.0 };
        let mut shapes = Vec::with_capacity(self.curves.len());
        let mut junction_diag = vec![(0.0, 0.0); self.junctions.len()];
        for (layout, curve) in self.curves.iter().zip(self.template.curves()) {
            let h = crate::geometry::polyline_length(curve) / curve.edge_count() as f64;
            shapes.push(CurveShape {
                n: layout.n_points,
                closed: layout.closed,
                free: layout.free_points(),
                first: layout.first,
                stride: layout.stride(),
                spacing: h,
                weight,
            });
            for spec in [layout.start, layout.end].into_iter().flatten() {
                if let EndSpec::Slaved { junction, .. } = spec {
                    // a junction move bends the curve only through the
                    // linear interpolation; a rotation bends the end edge
                    let length = crate::geometry::polyline_length(curve);
                    junction_diag[junction].0 += 1.0 + 1.0 / length;
                    junction_diag[junction].1 += 4.0 / h;
                }
            }
        }
        let mut diagonal = Vec::new();
        for (&k, &(pos, frame)) in self.junctions.iter().zip(&junction_diag) {
            diagonal.extend([(k, pos), (k + 1, pos), (k + 2, frame)]);
        }
        Preconditioner::new(&shapes, diagonal)
    }

    /// Length of the shortest curve relative to the network diameter.
    pub fn shortest_curve_ratio(&self, network: &Network) -> f64 {
        let d = network.bbox_diameter();
        network
            .curves()
            .iter()
            .map(|c| crate::geometry::polyline_length(c) / d)
            .fold(f64::INFINITY, f64::min)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::energy;
    use crate::network::{make_circle, make_degenerate_figure_eight, make_standard_double_bubble, make_teardrop};

    fn check_round_trip(net: &Network, layout: &Layout) {
        let x = layout.encode(net);
        assert_eq!(x.len(), layout.dim());
        let back = layout.decode(&x).unwrap();
        for (a, b) in net.curves().iter().zip(back.curves()) {
            for (p, q) in a.points().iter().zip(b.points()) {
                assert!(p.distance(*q) < 1e-12, "{p:?} {q:?}");
            }
        }
        let e = layout.evaluate(&x).unwrap();
        assert!((e.energy - energy(net).unwrap()).abs() < 1e-12 * e.energy);
    }

    #[test]
    fn layouts_round_trip() {
        for dof in [Dof::Points, Dof::NormalOffsets] {
            let circle = make_circle(1.0, 20).unwrap();
            check_round_trip(&circle, &Layout::for_network(&circle, dof).unwrap());
            let bubble = make_standard_double_bubble(0.9, 30).unwrap();
            let layout = Layout::for_network(&bubble, dof).unwrap();
            let per_point = if dof == Dof::Points { 2 } else { 1 };
            assert_eq!(layout.dim(), 6 + 3 * per_point * 26);
            check_round_trip(&bubble, &layout);
            let drop = make_teardrop(1.0, 40).unwrap();
            check_round_trip(&drop, &Layout::for_network(&drop, dof).unwrap());
            let eight = make_degenerate_figure_eight(41).unwrap();
            check_round_trip(&eight, &Layout::for_network(&eight, dof).unwrap());
            let dd = crate::network::make_symmetric_double_drop(&drop.curves()[0]).unwrap();
            check_round_trip(&dd, &Layout::mirrored(&dd, dof).unwrap());
        }
    }

    fn check_gradient(layout: &Layout, x: &[f64]) {
        let g = layout.evaluate(x).unwrap().gradient;
        let step = 1e-6;
        for k in 0..x.len() {
            let mut xp = x.to_vec();
            let mut xm = x.to_vec();
            xp[k] += step;
            xm[k] -= step;
            let fd = (layout.evaluate(&xp).unwrap().energy - layout.evaluate(&xm).unwrap().energy) / (2.0 * step);
            assert!((fd - g[k]).abs() <= 1e-5 * g[k].abs().max(1.0), "component {k}: {fd} vs {}", g[k]);
        }
    }

    #[test]
    fn gradients_match_differences() {
        let bubble = make_standard_double_bubble(0.9, 16).unwrap();
        let drop = make_teardrop(1.0, 20).unwrap();
        let dd = crate::network::make_symmetric_double_drop(&drop.curves()[0]).unwrap();
        let eight = make_degenerate_figure_eight(21).unwrap();
        for dof in [Dof::Points, Dof::NormalOffsets] {
            for net in [&bubble, &drop, &eight] {
                let layout = Layout::for_network(net, dof).unwrap();
                let mut x = layout.encode(net);
                // move off the symmetric configuration
                for (k, v) in x.iter_mut().enumerate() {
                    *v += 1e-3 * ((k as f64) * 1.7).sin();
                }
                check_gradient(&layout, &x);
            }
            let layout = Layout::mirrored(&dd, dof).unwrap();
            check_gradient(&layout, &layout.encode(&dd));
        }
    }

    #[test]
    fn asymmetric_double_drop_is_rejected() {
        let drop = make_teardrop(1.0, 40).unwrap();
        let dd = crate::network::make_symmetric_double_drop(&drop.curves()[0]).unwrap();
        let mut curves = dd.curves().to_vec();
        curves[1] = curves[1].map_points(|p| p * 1.01);
        let bad = Network::from_parts(NetworkKind::DoubleDrop, curves, dd.junctions().to_vec(), None);
        assert!(Layout::mirrored(&bad, Dof::Points).is_err());
    }

    #[test]
    fn slaved_neighbours_must_stay_ahead() {
        let bubble = make_standard_double_bubble(0.9, 30).unwrap();
        let layout = Layout::for_network(&bubble, Dof::NormalOffsets).unwrap();
        let mut x = layout.encode(&bubble);
        // turn the first frame around: every slaved edge now points backwards
        x[2] += std::f64::consts::PI;
        assert!(layout.evaluate(&x).is_none());
    }
}
