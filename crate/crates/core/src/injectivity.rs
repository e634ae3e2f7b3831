//! Self-intersection and crossing counts for networks.
//!
//! Minimizers are expected to be embedded, but the discrete descent does
//! not enforce it, so converged networks are audited with an exhaustive
//! segment test.

use serde::Serialize;

use crate::geometry::{DiscreteCurve, Point2};
use crate::network::Network;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectivityReport {
    /// Intersecting pairs of non-adjacent edges within each curve.
    pub self_intersections: Vec<usize>,
    /// `(i, j, count)` for every pair of curves `i < j`.
    pub crossings: Vec<(usize, usize, usize)>,
}

impl InjectivityReport {
    pub fn total(&self) -> usize {
        self.self_intersections.iter().sum::<usize>()
            + self.crossings.iter().map(|c| c.2).sum::<usize>()
    }

    pub fn is_injective(&self) -> bool {
        self.total() == 0
    }
}

fn orient(a: Point2, b: Point2, c: Point2) -> i8 {
    let v = (b - a).cross(c - a);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segments `[a, b]` and `[c, d]` meet.
fn segments_meet(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

fn segments(curve: &DiscreteCurve) -> Vec<(Point2, Point2)> {
    let pts = curve.points();
    (0..curve.edge_count())
        .map(|i| (pts[i], pts[(i + 1) % pts.len()]))
        .collect()
}

/// Edges that share an endpoint, such as two curves leaving one junction,
/// touch there by construction and are not counted.
fn share_endpoint(s: (Point2, Point2), t: (Point2, Point2)) -> bool {
    s.0 == t.0 || s.0 == t.1 || s.1 == t.0 || s.1 == t.1
}

fn count_within(curve: &DiscreteCurve) -> usize {
    let segs = segments(curve);
    let m = segs.len();
    let mut count = 0;
    for i in 0..m {
        for j in i + 2..m {
            if curve.is_closed() && i == 0 && j == m - 1 {
                continue;
            }
            let (s, t) = (segs[i], segs[j]);
            if !share_endpoint(s, t) && segments_meet(s.0, s.1, t.0, t.1) {
                count += 1;
            }
        }
    }
    count
}

fn count_between(a: &DiscreteCurve, b: &DiscreteCurve) -> usize {
    let (sa, sb) = (segments(a), segments(b));
    let mut count = 0;
    for &s in &sa {
        for &t in &sb {
            if !share_endpoint(s, t) && segments_meet(s.0, s.1, t.0, t.1) {
                count += 1;
            }
        }
    }
    count
}

pub fn injectivity_report(network: &Network) -> InjectivityReport {
    let curves = network.curves();
    let self_intersections = curves.iter().map(count_within).collect();
    let mut crossings = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            crossings.push((i, j, count_between(&curves[i], &curves[j])));
        }
    }
    InjectivityReport {
        self_intersections,
        crossings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{
        make_circle, make_degenerate_figure_eight, make_lemniscate, make_standard_double_bubble,
        make_teardrop,
    };

    #[test]
    fn embedded_shapes_report_nothing() {
        for net in [
            make_circle(1.0, 64).unwrap(),
            make_teardrop(1.0, 80).unwrap(),
            make_standard_double_bubble(1.0, 40).unwrap(),
            make_degenerate_figure_eight(60).unwrap(),
        ] {
            let r = injectivity_report(&net);
            assert!(r.is_injective(), "{:?}: {r:?}", net.kind());
        }
    }

    #[test]
    fn lemniscate_crosses_once() {
        let r = injectivity_report(&make_lemniscate(1.0, 64).unwrap());
        assert_eq!(r.self_intersections, vec![1]);
        assert_eq!(r.total(), 1);
    }

    #[test]
    fn segment_predicate() {
        let p = |x, y| Point2::new(x, y);
        assert!(segments_meet(p(0.0, 0.0), p(1.0, 1.0), p(0.0, 1.0), p(1.0, 0.0)));
        assert!(!segments_meet(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0)));
        // touching at an interior point
        assert!(segments_meet(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(1.0, 1.0)));
        // collinear, overlapping and disjoint
        assert!(segments_meet(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(3.0, 0.0)));
        assert!(!segments_meet(p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(3.0, 0.0)));
    }

    #[test]
    fn crossing_curves_are_counted() {
        let a = DiscreteCurve::open(vec![Point2::new(-1.0, 0.0), Point2::new(1.0, 0.0)]).unwrap();
        let b = DiscreteCurve::open(vec![
            Point2::new(0.0, -1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, -1.0),
        ])
        .unwrap();
        assert_eq!(count_between(&a, &b), 2);
    }
}
