//! Theta-networks approaching a degenerate one.
//!
//! A degenerate Theta-network is two drops sharing the point `P` whose
//! middle curve has collapsed. Cutting each drop where its tangent is
//! horizontal and at `P`, then inserting three horizontal segments of
//! length `1/n`, gives a genuine Theta-network whose energy exceeds the
//! relaxed energy by exactly the added length when the cuts fall on
//! vertices without turning.

use crate::error::{Error, Result};
use crate::geometry::{DiscreteCurve, Point2};
use crate::network::{validate_default, Junction, Network, NetworkKind};

/// Points on the inserted middle segment.
const SEGMENT_POINTS: usize = 9;

/// Index of the vertex where the y component of the edge directions first
/// changes sign. A run of horizontal edges is cut at its middle vertex.
///
/// Edge directions are constant along edges, so the sign can only change
/// at a vertex and no root bracketing is needed.
fn horizontal_cut(curve: &DiscreteCurve) -> Option<usize> {
    let sign = |e: Point2| {
        if e.y.abs() <= 1e-12 * e.norm() {
            0
        } else if e.y > 0.0 {
            1
        } else {
            -1
        }
    };
    let signs: Vec<i32> = curve.edges().map(sign).collect();
    let first = signs.iter().copied().find(|&s| s != 0)?;
    let start = signs.iter().position(|&s| s == first)?;
    let mut k = start;
    while k < signs.len() && signs[k] == first {
        k += 1;
    }
    let run_end = (k..signs.len()).find(|&j| signs[j] != 0)?;
    if signs[run_end] != -first {
        return None;
    }
    // zero edges k..run_end span vertices k..=run_end
    let cut = (k + run_end) / 2;
    (cut > 0 && cut < curve.len() - 1).then_some(cut)
}

/// Splits `curve` at vertex `cut`: the part up to the cut is shifted by
/// `shift`, and the two copies of the cut vertex are joined by a straight
/// edge.
fn split_drop(curve: &DiscreteCurve, cut: usize, shift: Point2) -> Result<DiscreteCurve> {
    let pts = curve.points();
    let mut out: Vec<Point2> = pts[..=cut].iter().map(|&p| p + shift).collect();
    out.extend_from_slice(&pts[cut..]);
    DiscreteCurve::open(out)
}

/// The `n`-th member of the recovery sequence of a degenerate
/// Theta-network. The inserted segments have length `1/n` and point along
/// the negative x axis, so the input must carry its drop tangents at 60,
/// 120, 240 and 300 degrees.
pub fn recovery_sequence(degenerate: &Network, n: usize) -> Result<Network> {
    if degenerate.kind() != NetworkKind::DegenerateTheta {
        return Err(Error::InvalidInput(format!(
            "recovery needs a degenerate theta network, got {}",
            degenerate.kind().as_str()
        )));
    }
    if n == 0 {
        return Err(Error::InvalidInput("segment parameter n must be positive".into()));
    }
    let report = validate_default(degenerate)?;
    if !report.valid {
        return Err(Error::Validation(report.issues.join("; ")));
    }
    let p = degenerate.junctions()[0].position;
    let shift = Point2::new(1.0 / n as f64, 0.0);
    let mut drops = Vec::with_capacity(2);
    for (i, curve) in degenerate.curves().iter().enumerate() {
        let cut = horizontal_cut(curve).ok_or_else(|| {
            Error::ConstructionFailed(format!("drop {i} has no horizontal tangent"))
        })?;
        drops.push(split_drop(curve, cut, shift)?);
    }
    let right = p + shift;
    let segment: Vec<Point2> = (0..SEGMENT_POINTS)
        .map(|k| right + (p - right) * (k as f64 / (SEGMENT_POINTS - 1) as f64))
        .collect();
    let mut segment = segment;
    segment[SEGMENT_POINTS - 1] = p;
    let lower = drops.pop().expect("two drops");
    let upper = drops.pop().expect("two drops");
    let first_tangent = upper.edge(0);
    let last_tangent = -upper.edge(upper.edge_count() - 1);
    let theta = Network::from_parts(
        NetworkKind::Theta,
        vec![upper, DiscreteCurve::open(segment)?, lower],
        vec![
            Junction {
                position: right,
                frame_angle: first_tangent.angle(),
            },
            Junction {
                position: p,
                frame_angle: last_tangent.angle(),
            },
        ],
        None,
    );
    let report = validate_default(&theta)?;
    if !report.valid {
        return Err(Error::ConstructionFailed(format!(
            "drops are not oriented for horizontal segments: {}",
            report.issues.join("; ")
        )));
    }
    Ok(theta)
}
