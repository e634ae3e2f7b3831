//! Limited-memory BFGS direction from the two-loop recursion.

use std::collections::VecDeque;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[derive(Debug, Clone)]
pub(crate) struct History {
    memory: usize,
    pairs: VecDeque<(Vec<f64>, Vec<f64>, f64)>,
}

impl History {
    pub(crate) fn new(memory: usize) -> Self {
        Self {
            memory,
            pairs: VecDeque::with_capacity(memory),
        }
    }

    pub(crate) fn clear(&mut self) {
        self.pairs.clear();
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Stores the step `s` and gradient change `y` when the curvature
    /// condition `s . y > 0` holds comfortably.
    pub(crate) fn push(&mut self, s: Vec<f64>, y: Vec<f64>) {
        let sy = dot(&s, &y);
        if sy <= 1e-12 * dot(&s, &s).sqrt() * dot(&y, &y).sqrt() {
            return;
        }
        if self.pairs.len() == self.memory {
            self.pairs.pop_front();
        }
        self.pairs.push_back((s, y, 1.0 / sy));
    }

    /// `-H g` with `H` the current inverse Hessian estimate, seeded by
    /// `h0` (a symmetric positive definite map) scaled to the latest pair.
    pub(crate) fn direction(&self, g: &[f64], h0: impl Fn(&[f64]) -> Vec<f64>) -> Vec<f64> {
        let mut q = g.to_vec();
        let mut alphas = Vec::with_capacity(self.pairs.len());
        for (s, y, rho) in self.pairs.iter().rev() {
            let a = rho * dot(s, &q);
            for (qi, yi) in q.iter_mut().zip(y) {
                *qi -= a * yi;
            }
            alphas.push(a);
        }
        let mut q = h0(&q);
        if let Some((s, y, _)) = self.pairs.back() {
            let gamma = dot(s, y) / dot(y, &h0(y));
            for qi in &mut q {
                *qi *= gamma;
            }
        }
        for ((s, y, rho), a) in self.pairs.iter().zip(alphas.into_iter().rev()) {
            let b = rho * dot(y, &q);
            for (qi, si) in q.iter_mut().zip(s) {
                *qi += (a - b) * si;
            }
        }
        q.iter_mut().for_each(|v| *v = -*v);
        q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_quadratic_newton_step() {
        // f = x^2 + 10 y^2, exact pairs along both axes
        let mut h = History::new(5);
        h.push(vec![1.0, 0.0], vec![2.0, 0.0]);
        h.push(vec![0.0, 1.0], vec![0.0, 20.0]);
        let d = h.direction(&[2.0, 20.0], |v| v.to_vec());
        assert!((d[0] + 1.0).abs() < 1e-12 && (d[1] + 1.0).abs() < 1e-12, "{d:?}");
    }

    #[test]
    fn empty_history_is_steepest_descent() {
        let h = History::new(3);
        assert_eq!(h.direction(&[1.0, -2.0], |v| v.to_vec()), vec![-1.0, 2.0]);
    }

    #[test]
    fn rejects_negative_curvature() {
        let mut h = History::new(3);
        h.push(vec![1.0, 0.0], vec![-1.0, 0.0]);
        assert!(h.is_empty());
    }
}
