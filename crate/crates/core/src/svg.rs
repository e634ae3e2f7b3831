//! SVG rendering of networks.
//!
//! The view box is the bounding box of all points widened by 5% on every
//! side, and y points up as in the plane.

use std::fmt::Write;

use crate::geometry::Point2;
use crate::network::Network;

/// Stroke colours by curve index.
const PALETTE: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

const MARGIN: f64 = 0.05;

fn bounds(network: &Network) -> (Point2, Point2) {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in network.curves().iter().flat_map(|c| c.points()) {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (lo, hi)
}

pub fn render_svg(network: &Network, pixel_width: u32) -> String {
    let (lo, hi) = bounds(network);
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let pad = MARGIN * span;
    let (x0, y0) = (lo.x - pad, lo.y - pad);
    let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
    let pixel_height = (pixel_width as f64 * h / w).round().max(1.0) as u32;
    let stroke = 0.006 * span;
    // flipping y maps plane y to the top of the box at y0 + h
    let map = |p: Point2| (p.x, y0 + h - (p.y - y0));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pixel_width}" height="{pixel_height}" viewBox="{x0} {y0} {w} {h}">"#
    );
    for (i, curve) in network.curves().iter().enumerate() {
        let mut path = String::new();
        for (k, &p) in curve.points().iter().enumerate() {
            let (x, y) = map(p);
            let _ = write!(path, "{}{x:.6},{y:.6} ", if k == 0 { "M" } else { "L" });
        }
        if curve.is_closed() {
            path.push('Z');
        }
        let _ = writeln!(
            out,
            r#"  <path d="{}" fill="none" stroke="{}" stroke-width="{stroke:.6}" stroke-linejoin="round"/>"#,
            path.trim_end(),
            PALETTE[i % PALETTE.len()]
        );
    }
    for j in network.junctions() {
        let (x, y) = map(j.position);
        let _ = writeln!(
            out,
            r#"  <circle cx="{x:.6}" cy="{y:.6}" r="{:.6}" fill="black"/>"#,
            2.0 * stroke
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::{make_circle, make_standard_double_bubble};

    #[test]
    fn view_box_has_margin() {
        let svg = render_svg(&make_circle(1.0, 32).unwrap(), 400);
        let vb: Vec<f64> = svg
            .split("viewBox=\"")
            .nth(1)
            .unwrap()
            .split('"')
            .next()
            .unwrap()
            .split(' ')
            .map(|v| v.parse().unwrap())
            .collect();
        assert!((vb[0] + 1.1).abs() < 1e-2 && (vb[2] - 2.2).abs() < 1e-2, "{vb:?}");
        assert!(svg.contains(r#"width="400""#));
    }

    #[test]
    fn one_path_per_curve_and_y_is_flipped() {
        let net = make_standard_double_bubble(1.0, 20).unwrap();
        let svg = render_svg(&net, 300);
        assert_eq!(svg.matches("<path").count(), 3);
        assert_eq!(svg.matches("<circle").count(), 2);
        // curve 0 is the upper arc, so in screen space it starts upward,
        // i.e. towards smaller y
        let first = &svg[svg.find("d=\"M").unwrap() + 4..];
        let coords: Vec<f64> = first
            .split([' ', 'L', ','])
            .filter(|s| !s.is_empty())
            .take(4)
            .map(|v| v.parse().unwrap())
            .collect();
        assert!(coords[3] < coords[1]);
    }
}
