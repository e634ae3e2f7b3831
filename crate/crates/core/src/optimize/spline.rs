//! Resampling along an interpolating cubic spline.
//!
//! Placing new vertices on the old polygon concentrates all turning at the
//! old vertices and inflates the bending energy by far more than the
//! discretization error. The spline is C2 with chord-length knots: periodic
//! for closed curves, clamped to the end edge directions for open ones.
//! Endpoints and end edge directions are kept exactly.

use crate::error::Result;
use crate::geometry::{DiscreteCurve, Point2};

/// Subdivisions per knot interval when tabulating arclength.
const TABULATION: usize = 16;

struct Spline {
    knots: Vec<f64>,
    values: Vec<Point2>,
    /// Second derivatives at the knots.
    moments: Vec<Point2>,
}

/// Solves a tridiagonal system in place (`sub[0]` and `sup[n-1]` unused).
fn thomas(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [Point2]) {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    rhs[0] = rhs[0] / beta;
    for i in 1..n {
        c[i - 1] = sup[i - 1] / beta;
        beta = diag[i] - sub[i] * c[i - 1];
        rhs[i] = (rhs[i] - rhs[i - 1] * sub[i]) / beta;
    }
    for i in (0..n - 1).rev() {
        let next = rhs[i + 1] * c[i];
        rhs[i] -= next;
    }
}

impl Spline {
    /// Clamped to `tangents`, or to the end chords when `None`.
    fn open(values: Vec<Point2>, tangents: Option<(Point2, Point2)>) -> Self {
        let n = values.len() - 1;
        let h: Vec<f64> = values.windows(2).map(|w| w[0].distance(w[1])).collect();
        let (t0, t1) = tangents.unwrap_or((
            (values[1] - values[0]) / h[0],
            (values[n] - values[n - 1]) / h[n - 1],
        ));
        let mut sub = vec![0.0; n + 1];
        let mut diag = vec![0.0; n + 1];
        let mut sup = vec![0.0; n + 1];
        let mut rhs = vec![Point2::ORIGIN; n + 1];
        diag[0] = 2.0 * h[0];
        sup[0] = h[0];
        rhs[0] = ((values[1] - values[0]) / h[0] - t0) * 6.0;
        for i in 1..n {
            sub[i] = h[i - 1];
            diag[i] = 2.0 * (h[i - 1] + h[i]);
            sup[i] = h[i];
            rhs[i] = ((values[i + 1] - values[i]) / h[i] - (values[i] - values[i - 1]) / h[i - 1]) * 6.0;
        }
        sub[n] = h[n - 1];
        diag[n] = 2.0 * h[n - 1];
        rhs[n] = (t1 - (values[n] - values[n - 1]) / h[n - 1]) * 6.0;
        thomas(&sub, &diag, &sup, &mut rhs);
        Self::assemble(values, &h, rhs)
    }

    /// Periodic spline; `values` lists each point once.
    fn closed(points: &[Point2]) -> Self {
        let n = points.len();
        let h: Vec<f64> = (0..n).map(|i| points[i].distance(points[(i + 1) % n])).collect();
        let prev = |i: usize| (i + n - 1) % n;
        let slope = |i: usize| (points[(i + 1) % n] - points[i]) / h[i];
        // cyclic system by Sherman-Morrison on the corner entries
        let a0 = h[prev(0)];
        let cn = h[n - 1];
        let gamma = -2.0 * (h[prev(0)] + h[0]);
        let mut sub = vec![0.0; n];
        let mut diag = vec![0.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![Point2::ORIGIN; n];
        for i in 0..n {
            sub[i] = h[prev(i)];
            diag[i] = 2.0 * (h[prev(i)] + h[i]);
            sup[i] = h[i];
            rhs[i] = (slope(i) - slope(prev(i))) * 6.0;
        }
        diag[0] -= gamma;
        diag[n - 1] -= cn * a0 / gamma;
        thomas(&sub, &diag, &sup, &mut rhs);
        let mut u = vec![Point2::ORIGIN; n];
        u[0] = Point2::new(gamma, gamma);
        u[n - 1] = Point2::new(cn, cn);
        thomas(&sub, &diag, &sup, &mut u);
        let fact_num = rhs[0] + rhs[n - 1] * (a0 / gamma);
        let fact_den = 1.0 + u[0].x + u[n - 1].x * a0 / gamma;
        let factor = Point2::new(fact_num.x / fact_den, fact_num.y / fact_den);
        let mut moments: Vec<Point2> = rhs
            .iter()
            .zip(&u)
            .map(|(r, z)| Point2::new(r.x - factor.x * z.x, r.y - factor.y * z.y))
            .collect();
        let mut values = points.to_vec();
        values.push(points[0]);
        moments.push(moments[0]);
        Self::assemble(values, &h, moments)
    }

    fn assemble(values: Vec<Point2>, h: &[f64], moments: Vec<Point2>) -> Self {
        let mut knots = Vec::with_capacity(values.len());
        let mut acc = 0.0;
        knots.push(0.0);
        for hi in h {
            acc += hi;
            knots.push(acc);
        }
        Self {
            knots,
            values,
            moments,
        }
    }

    fn eval(&self, seg: usize, b: f64) -> Point2 {
        let h = self.knots[seg + 1] - self.knots[seg];
        let a = 1.0 - b;
        self.values[seg] * a
            + self.values[seg + 1] * b
            + (self.moments[seg] * (a * a * a - a) + self.moments[seg + 1] * (b * b * b - b)) * (h * h / 6.0)
    }

    /// `count + 1` points equally spaced in arclength from start to end.
    fn sample(&self, count: usize) -> Vec<Point2> {
        let segs = self.values.len() - 1;
        let mut table = Vec::with_capacity(segs * TABULATION + 1);
        let mut s = 0.0;
        let mut last = self.values[0];
        table.push((0.0, 0, 0.0));
        for seg in 0..segs {
            for k in 1..=TABULATION {
                let b = k as f64 / TABULATION as f64;
                let p = self.eval(seg, b);
                s += p.distance(last);
                last = p;
                table.push((s, seg, b));
            }
        }
        let total = s;
        let mut out = Vec::with_capacity(count + 1);
        let mut row = 1;
        for j in 0..=count {
            let target = total * j as f64 / count as f64;
            while row + 1 < table.len() && table[row].0 < target {
                row += 1;
            }
            let (s0, seg0, b0) = table[row - 1];
            let (s1, seg1, b1) = table[row];
            let w = if s1 > s0 { ((target - s0) / (s1 - s0)).clamp(0.0, 1.0) } else { 0.0 };
            // the row before a new interval ends the previous one at b = 1
            let base = if seg0 == seg1 { b0 } else { 0.0 };
            let b = base + w * (b1 - base);
            out.push(self.eval(seg1, b));
        }
        out[0] = self.values[0];
        out[count] = *self.values.last().expect("nonempty spline");
        out
    }
}

/// `curve` resampled to `points` vertices, equally spaced in arclength
/// along its interpolating spline.
pub(crate) fn spline_resample(curve: &DiscreteCurve, points: usize) -> Result<DiscreteCurve> {
    if curve.is_closed() {
        let spline = Spline::closed(curve.points());
        let mut pts = spline.sample(points);
        pts.pop();
        DiscreteCurve::closed(pts)
    } else {
        let pts = curve.points();
        let m = pts.len() - 1;
        if pts.len() < 5 || points < 4 {
            return DiscreteCurve::open(Spline::open(pts.to_vec(), None).sample(points - 1));
        }
        // The end edges carry the end tangents and their inner vertices sit
        // off the smooth curve by O(k h^2), so they are not interpolated.
        let t0 = (pts[1] - pts[0]) / pts[1].distance(pts[0]);
        let t1 = (pts[m] - pts[m - 1]) / pts[m].distance(pts[m - 1]);
        let mut knots = vec![pts[0]];
        knots.extend_from_slice(&pts[2..m - 1]);
        knots.push(pts[m]);
        let mut out = Spline::open(knots, Some((t0, t1))).sample(points - 1);
        let k = out.len() - 1;
        out[1] = out[0] + t0 * out[1].distance(out[0]);
        out[k - 1] = out[k] - t1 * out[k - 1].distance(out[k]);
        DiscreteCurve::open(out)
    }
}
