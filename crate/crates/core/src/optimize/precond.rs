//! Initial inverse Hessian for L-BFGS.
//!
//! The bending term behaves like `(2 / h^3) |D2 p|^2` and the length term
//! like `(1 / h) |D1 p|^2` for a curve sampled at spacing `h`, so their sum
//! (plus a small multiple of the identity, which removes the translation
//! null space of closed curves) approximates each curve's Hessian block,
//! for point coordinates and for normal offsets alike. Coordinates `x` and
//! `y` share that block. Junction variables get scalar estimates.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

/// Shift added to every curve block, in units of `F` per squared length.
const SHIFT: f64 = 1.0;

#[derive(Debug, Clone)]
struct CurveBlock {
    /// Offset in `x` of the first free point.
    first: usize,
    /// Variables per point: `(x, y)` or one normal offset.
    stride: usize,
    factor: Cholesky<f64, Dyn>,
}

#[derive(Debug, Clone)]
pub(crate) struct Preconditioner {
    blocks: Vec<CurveBlock>,
    /// `(index, diagonal entry)` for variables outside every curve block.
    diagonal: Vec<(usize, f64)>,
}

/// Free-point description of one curve: `n` points in total, of which the
/// consecutive range `free` is stored in `x` from offset `first`.
pub(crate) struct CurveShape {
    pub n: usize,
    pub closed: bool,
    pub free: std::ops::Range<usize>,
    pub first: usize,
    pub stride: usize,
    pub spacing: f64,
    /// Number of copies of the curve carried by these variables.
    pub weight: f64,
}

fn curve_matrix(shape: &CurveShape) -> DMatrix<f64> {
    let n = shape.n;
    let h = shape.spacing;
    let mut full = DMatrix::<f64>::zeros(n, n);
    let bend = 2.0 / h.powi(3);
    let stretch = 1.0 / h;
    let wrap = |i: isize| i.rem_euclid(n as isize) as usize;
    let vertices: Vec<isize> = if shape.closed {
        (0..n as isize).collect()
    } else {
        (1..n as isize - 1).collect()
    };
    for i in vertices {
        let idx = [wrap(i - 1), wrap(i), wrap(i + 1)];
        let coef = [1.0, -2.0, 1.0];
        for a in 0..3 {
            for b in 0..3 {
                full[(idx[a], idx[b])] += bend * coef[a] * coef[b];
            }
        }
    }
    let edges = if shape.closed { n } else { n - 1 };
    for e in 0..edges {
        let (i, j) = (e, (e + 1) % n);
        full[(i, i)] += stretch;
        full[(j, j)] += stretch;
        full[(i, j)] -= stretch;
        full[(j, i)] -= stretch;
    }
    let k = shape.free.len();
    let lo = shape.free.start;
    DMatrix::from_fn(k, k, |a, b| {
        shape.weight * full[(lo + a, lo + b)] + if a == b { SHIFT } else { 0.0 }
    })
}

impl Preconditioner {
    pub(crate) fn new(curves: &[CurveShape], diagonal: Vec<(usize, f64)>) -> Self {
        let blocks = curves
            .iter()
            .filter(|c| !c.free.is_empty())
            .map(|c| CurveBlock {
                first: c.first,
                stride: c.stride,
                factor: Cholesky::new(curve_matrix(c))
                    .expect("shifted curve operator is positive definite"),
            })
            .collect();
        Self { blocks, diagonal }
    }

    /// `M^{-1} q`.
    pub(crate) fn apply(&self, q: &[f64]) -> Vec<f64> {
        let mut out = q.to_vec();
        for block in &self.blocks {
            let k = block.factor.l_dirty().nrows();
            let st = block.stride;
            for coord in 0..st {
                let rhs = DVector::from_fn(k, |i, _| q[block.first + st * i + coord]);
                let sol = block.factor.solve(&rhs);
                for i in 0..k {
                    out[block.first + st * i + coord] = sol[i];
                }
            }
        }
        for &(i, d) in &self.diagonal {
            out[i] = q[i] / d;
        }
        out
    }
}
