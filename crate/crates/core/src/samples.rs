//! Seeded random inputs for property checks and fuzzing.
//!
//! Every generator is deterministic in the `ChaCha8Rng` it is handed.
//! Perturbations never move the end edges of open curves, so junction
//! positions and angles of the input survive exactly.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bounds::PiecewiseClosedCurve;
use crate::error::Result;
use crate::geometry::{polyline_length, DiscreteCurve, Point2};
use crate::network::{
    make_ellipse, make_standard_double_bubble, make_symmetric_double_drop, make_teardrop,
    Network, NetworkKind,
};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random trigonometric profile on `[0, 1]`: sine modes vanishing at both
/// ends when `periodic` is false, full periodic modes otherwise. Mode `j`
/// is damped by `1 / j^2`.
fn fourier_profile(rng: &mut ChaCha8Rng, modes: usize, periodic: bool) -> impl Fn(f64) -> f64 {
    let coeffs: Vec<(f64, f64)> = (1..=modes)
        .map(|j| {
            let damp = 1.0 / (j * j) as f64;
            (rng.gen_range(-1.0..1.0) * damp, rng.gen_range(0.0..2.0 * PI))
        })
        .collect();
    move |s| {
        coeffs
            .iter()
            .enumerate()
            .map(|(j, &(c, phase))| {
                let k = (j + 1) as f64;
                if periodic {
                    c * (2.0 * PI * k * s + phase).sin()
                } else {
                    c * (PI * k * s).sin()
                }
            })
            .sum()
    }
}

/// Unit normal at vertex `i` from the chord through its neighbours.
fn vertex_normal(pts: &[Point2], i: usize, closed: bool) -> Point2 {
    let n = pts.len();
    let (a, b) = if closed {
        (pts[(i + n - 1) % n], pts[(i + 1) % n])
    } else {
        (pts[i.saturating_sub(1)], pts[(i + 1).min(n - 1)])
    };
    let chord = b - a;
    chord.perp() / chord.norm()
}

/// Moves the points of `curve` along their normals by a smooth random
/// profile of size `amplitude * L` plus independent noise of size
/// `jitter * h`. Open curves keep their first two and last two points.
pub fn perturb_curve(
    curve: &DiscreteCurve,
    rng: &mut ChaCha8Rng,
    amplitude: f64,
    jitter: f64,
) -> Result<DiscreteCurve> {
    let pts = curve.points();
    let n = pts.len();
    let closed = curve.is_closed();
    let length = polyline_length(curve);
    let h = length / curve.edge_count() as f64;
    let profile = fourier_profile(rng, 5, closed);
    let movable = |i: usize| closed || (i >= 2 && i + 2 < n);
    let out = (0..n)
        .map(|i| {
            if !movable(i) {
                return pts[i];
            }
            let s = if closed { i as f64 / n as f64 } else { i as f64 / (n - 1) as f64 };
            let offset = amplitude * length * profile(s) + jitter * h * rng.gen_range(-1.0..1.0);
            pts[i] + vertex_normal(pts, i, closed) * offset
        })
        .collect();
    DiscreteCurve::new(out, closed)
}

/// Applies [`perturb_curve`] to every curve. The symmetric double drop
/// loses its symmetry, which its kind does not require.
pub fn perturb_network(
    network: &Network,
    rng: &mut ChaCha8Rng,
    amplitude: f64,
    jitter: f64,
) -> Result<Network> {
    let curves = network
        .curves()
        .iter()
        .map(|c| perturb_curve(c, rng, amplitude, jitter))
        .collect::<Result<Vec<_>>>()?;
    Ok(Network::from_parts(
        network.kind(),
        curves,
        network.junctions().to_vec(),
        network.angles(),
    ))
}

/// Random rigid motion and scale.
fn random_placement(network: &Network, rng: &mut ChaCha8Rng) -> Network {
    let scale = rng.gen_range(0.5..2.0);
    let shift = Point2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    network
        .rotated(rng.gen_range(0.0..2.0 * PI))
        .scaled(scale, Point2::ORIGIN)
        .translated(shift)
}

/// Standard double bubble with random radius, resolution, placement and a
/// smooth perturbation of every curve.
pub fn random_theta(rng: &mut ChaCha8Rng) -> Result<Network> {
    let n = rng.gen_range(24..64);
    let base = make_standard_double_bubble(1.0, n)?;
    let net = perturb_network(&base, rng, 0.03, 0.0)?;
    Ok(random_placement(&net, rng))
}

/// Perturbed teardrop.
pub fn random_drop(rng: &mut ChaCha8Rng) -> Result<Network> {
    let n = rng.gen_range(30..90);
    let net = perturb_network(&make_teardrop(1.0, n)?, rng, 0.03, 0.0)?;
    Ok(random_placement(&net, rng))
}

/// A network of random kind (closed curve, drop, double drop, theta),
/// perturbed smoothly and with pointwise noise of `jitter` edge lengths.
pub fn random_network(rng: &mut ChaCha8Rng, jitter: f64) -> Result<Network> {
    let n = rng.gen_range(16..48);
    let base = match rng.gen_range(0..4) {
        0 => make_ellipse(1.0, rng.gen_range(0.4..1.0), n)?,
        1 => make_teardrop(1.0, n)?,
        2 => make_symmetric_double_drop(&make_teardrop(1.0, n)?.curves()[0])?,
        _ => make_standard_double_bubble(1.0, n)?,
    };
    let net = perturb_network(&base, rng, 0.03, jitter)?;
    Ok(random_placement(&net, rng))
}

/// Random closed curve made of `3..=7` arcs between the vertices of a
/// star-shaped polygon. Each arc bulges along a random sine profile and
/// each join is a corner with probability one half.
pub fn random_piecewise_closed(rng: &mut ChaCha8Rng) -> Result<PiecewiseClosedCurve> {
    let k = rng.gen_range(3..=7);
    let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
    angles.sort_by(f64::total_cmp);
    let corners: Vec<Point2> = angles
        .iter()
        .map(|&t| Point2::from_angle(t) * rng.gen_range(0.5..1.5))
        .collect();
    let mut arcs = Vec::with_capacity(k);
    let mut flags = Vec::with_capacity(k);
    for i in 0..k {
        let (a, b) = (corners[i], corners[(i + 1) % k]);
        let chord = b - a;
        let normal = chord.perp() / chord.norm();
        let profile = fourier_profile(rng, 4, false);
        let bulge = rng.gen_range(0.0..0.4) * chord.norm();
        let m = rng.gen_range(12..40);
        let mut pts: Vec<Point2> = (0..=m)
            .map(|j| {
                let s = j as f64 / m as f64;
                a + chord * s + normal * (bulge * profile(s))
            })
            .collect();
        pts[0] = a;
        pts[m] = b;
        arcs.push(DiscreteCurve::open(pts)?);
        flags.push(rng.gen_bool(0.5));
    }
    PiecewiseClosedCurve::new(arcs, flags, 1e-12)
}

/// Kind-specific sampler used by the fuzz suites.
pub fn random_of_kind(kind: NetworkKind, rng: &mut ChaCha8Rng) -> Result<Network> {
    match kind {
        NetworkKind::Drop => random_drop(rng),
        NetworkKind::Theta => random_theta(rng),
        _ => random_network(rng, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::validate_default;

    #[test]
    fn generators_are_deterministic() {
        let a = random_network(&mut rng(7), 0.1).unwrap();
        let b = random_network(&mut rng(7), 0.1).unwrap();
        assert_eq!(a, b);
        let c = random_network(&mut rng(8), 0.1).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn perturbed_networks_stay_valid() {
        let mut r = rng(1);
        for _ in 0..30 {
            for net in [
                random_theta(&mut r).unwrap(),
                random_drop(&mut r).unwrap(),
                random_network(&mut r, 0.2).unwrap(),
            ] {
                let report = validate_default(&net).unwrap();
                assert!(report.valid, "{:?}: {:?}", net.kind(), report.issues);
            }
        }
    }

    #[test]
    fn piecewise_curves_close() {
        let mut r = rng(3);
        for _ in 0..20 {
            let c = random_piecewise_closed(&mut r).unwrap();
            let arcs = c.arcs();
            for (i, arc) in arcs.iter().enumerate() {
                assert_eq!(arc.last(), arcs[(i + 1) % arcs.len()].first());
            }
        }
    }
}
