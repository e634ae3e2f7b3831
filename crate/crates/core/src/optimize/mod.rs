//! Descent on the discrete energy `F = E + L` with the network constraints
//! built into the variables (see [`layout`]).
//!
//! Each iteration takes an L-BFGS direction (steepest descent when the
//! history is empty or the direction is not a descent direction) and an
//! Armijo backtracking line search. Every `resample_every` iterations the
//! curves are resampled to equal chords. A resampling that lowers `F` is
//! always kept. One that raises it is kept only when some curve's spacing
//! has degraded past `resample_spacing_ratio` and the jump is at most
//! [`MAX_RESAMPLE_JUMP`] `* F`; every such jump is logged, and between
//! logged jumps the trace never increases.

pub mod layout;
mod lbfgs;
mod precond;
mod spline;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::network::{validate, Network, ValidationReport};
pub use layout::{Dof, Evaluation, Layout};
use lbfgs::{dot, History};
use precond::Preconditioner;
use spline::spline_resample;

/// Curves shorter than this fraction of the diameter stop a Theta run.
pub const DEGENERATION_RATIO: f64 = 1e-3;

/// Largest relative energy increase a forced resampling may cause.
pub const MAX_RESAMPLE_JUMP: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OptimizationConfig {
    /// Resample every curve to this many points before starting.
    pub n_per_curve: Option<usize>,
    pub max_iters: usize,
    /// Stop when the Euclidean norm of the gradient drops below this.
    pub grad_tol: f64,
    /// Stop when `F` decreased by less than `energy_rel_tol * F` over the
    /// last `stall_window` iterations.
    pub energy_rel_tol: f64,
    pub stall_window: usize,
    /// Weights for soft angle phases. All constraints are currently hard, so
    /// the schedule is validated and recorded but has no effect.
    pub angle_penalty_schedule: Vec<f64>,
    /// Zero disables resampling.
    pub resample_every: usize,
    /// Longest over shortest edge of a curve above which a resampling is
    /// forced even if it raises `F`.
    pub resample_spacing_ratio: f64,
    pub backtrack_factor: f64,
    pub armijo: f64,
    /// Largest point displacement of a steepest-descent step, relative to
    /// the mean edge length.
    pub initial_step: f64,
    pub max_backtracks: usize,
    pub memory: usize,
    pub seed: u64,
}

impl Default for OptimizationConfig {
    fn default() -> Self {
        Self {
            n_per_curve: None,
            max_iters: 20_000,
            grad_tol: 1e-9,
            energy_rel_tol: 1e-14,
            stall_window: 50,
            angle_penalty_schedule: Vec::new(),
            resample_every: 25,
            resample_spacing_ratio: 2.0,
            backtrack_factor: 0.5,
            armijo: 1e-4,
            initial_step: 0.1,
            max_backtracks: 60,
            memory: 10,
            seed: 0,
        }
    }
}

impl OptimizationConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if self.n_per_curve.is_some_and(|n| n < 4) {
            return bad("n_per_curve must be at least 4");
        }
        if !(self.grad_tol > 0.0 && self.energy_rel_tol > 0.0 && self.initial_step > 0.0) {
            return bad("tolerances and initial_step must be positive");
        }
        if !(self.backtrack_factor > 0.0 && self.backtrack_factor < 1.0) {
            return bad("backtrack_factor must lie in (0, 1)");
        }
        if !(self.armijo > 0.0 && self.armijo < 1.0) {
            return bad("armijo must lie in (0, 1)");
        }
        if !(self.resample_spacing_ratio > 1.0) {
            return bad("resample_spacing_ratio must exceed 1");
        }
        if self.max_backtracks == 0 || self.memory == 0 || self.stall_window == 0 {
            return bad("max_backtracks, memory and stall_window must be positive");
        }
        let s = &self.angle_penalty_schedule;
        if s.iter().any(|w| !(*w > 0.0)) || s.windows(2).any(|w| w[1] < w[0]) {
            return bad("angle_penalty_schedule must be positive and nondecreasing");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    Converged,
    MaxIters,
    LineSearchFailed,
    Degenerated,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceRow {
    pub iter: usize,
    pub energy: f64,
    pub elastic: f64,
    pub length: f64,
    pub grad_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResampleEvent {
    pub iter: usize,
    pub before: f64,
    pub after: f64,
    pub accepted: bool,
    /// Spacing had degraded past the configured ratio.
    pub forced: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimizationResult {
    #[serde(skip)]
    pub final_network: Network,
    pub energy_trace: Vec<f64>,
    pub grad_norm_trace: Vec<f64>,
    pub trace: Vec<TraceRow>,
    pub resamples: Vec<ResampleEvent>,
    pub constraint_violation: ValidationReport,
    pub termination: Termination,
    pub iterations: usize,
}

impl OptimizationResult {
    pub fn final_energy(&self) -> f64 {
        *self.energy_trace.last().expect("trace holds the initial energy")
    }

    /// Whether `F` never increased between iterations except across an
    /// accepted resampling, and each such jump stayed within
    /// [`MAX_RESAMPLE_JUMP`].
    pub fn trace_nonincreasing(&self) -> bool {
        self.trace.windows(2).all(|w| {
            let (a, b) = (w[0].energy, w[1].energy);
            b <= a
                || self.resamples.iter().any(|e| {
                    e.accepted && e.iter == w[1].iter && e.after - e.before <= MAX_RESAMPLE_JUMP * e.before
                })
        })
    }

    /// `iter,F,E,L,grad_norm` rows.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("iter,F,E,L,grad_norm\n");
        for r in &self.trace {
            writeln!(
                out,
                "{},{:.17e},{:.17e},{:.17e},{:.17e}",
                r.iter, r.energy, r.elastic, r.length, r.grad_norm
            )
            .expect("writing to a String");
        }
        out
    }
}

/// Stateful descent, advanced one iteration at a time by [`Minimizer::step`].
#[derive(Debug, Clone)]
pub struct Minimizer {
    config: OptimizationConfig,
    layout: Layout,
    precond: Preconditioner,
    x: Vec<f64>,
    eval: Evaluation,
    history: History,
    trace: Vec<TraceRow>,
    resamples: Vec<ResampleEvent>,
    iter: usize,
    /// Iterations since the last resampling attempt.
    since_resample: usize,
    /// First trace row after the last accepted resampling; the stall test
    /// only compares rows from there on.
    window_start: usize,
    termination: Option<Termination>,
    check_degeneration: bool,
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

fn resample_network(network: &Network, n: Option<usize>) -> Result<Network> {
    let mut curves = Vec::with_capacity(network.curves().len());
    for c in network.curves() {
        let points = n.unwrap_or(c.len());
        curves.push(spline_resample(c, points)?);
    }
    Ok(Network::from_parts(
        network.kind(),
        curves,
        network.junctions().to_vec(),
        network.angles(),
    ))
}

/// Longest over shortest edge.
fn spacing_ratio(curve: &crate::geometry::DiscreteCurve) -> f64 {
    let (lo, hi) = curve
        .edges()
        .map(|e| e.norm())
        .fold((f64::INFINITY, 0.0_f64), |(lo, hi), l| (lo.min(l), hi.max(l)));
    hi / lo
}

/// Mirror of the first curve; keeps a symmetric double drop exact.
fn remirror(network: &Network) -> Result<Network> {
    crate::network::make_symmetric_double_drop(&network.curves()[0])
}

impl Minimizer {
    pub fn new(network: &Network, config: OptimizationConfig) -> Result<Self> {
        Self::build(network, config, false)
    }

    /// Symmetric double drop: only the first curve moves, the second is its
    /// point reflection through the shared endpoint.
    pub fn symmetric_double_drop(network: &Network, config: OptimizationConfig) -> Result<Self> {
        Self::build(network, config, true)
    }

    fn build(network: &Network, config: OptimizationConfig, mirror: bool) -> Result<Self> {
        config.validate()?;
        let mut start = network.clone();
        if config.n_per_curve.is_some() {
            start = resample_network(&start, config.n_per_curve)?;
            if mirror {
                start = remirror(&start)?;
            }
        }
        let layout = Self::build_layout(&start, mirror)?;
        let x = layout.encode(&start);
        let eval = layout.evaluate(&x).ok_or_else(|| {
            Error::InvalidInput("initial network has no finite energy (NaN or collapsed edge)".into())
        })?;
        let trace = vec![TraceRow {
            iter: 0,
            energy: eval.energy,
            elastic: eval.elastic,
            length: eval.length,
            grad_norm: norm(&eval.gradient),
        }];
        Ok(Self {
            history: History::new(config.memory),
            check_degeneration: network.kind().is_triple(),
            config,
            precond: layout.preconditioner(),
            layout,
            x,
            eval,
            trace,
            resamples: Vec::new(),
            iter: 0,
            since_resample: 0,
            window_start: 0,
            termination: None,
        })
    }

    pub fn network(&self) -> Network {
        self.layout
            .decode(&self.x)
            .expect("accepted iterates are feasible")
    }

    pub fn energy(&self) -> f64 {
        self.eval.energy
    }

    pub fn grad_norm(&self) -> f64 {
        norm(&self.eval.gradient)
    }

    pub fn iterations(&self) -> usize {
        self.iter
    }

    pub fn termination(&self) -> Option<Termination> {
        self.termination
    }

    fn mean_edge(&self) -> f64 {
        let net = self.network();
        let (total, count) = net.curves().iter().fold((0.0, 0usize), |(l, n), c| {
            (l + crate::geometry::polyline_length(c), n + c.edge_count())
        });
        total / count as f64
    }

    /// One iteration. Returns the termination reason once the run is over.
    pub fn step(&mut self) -> Option<Termination> {
        if self.termination.is_some() {
            return self.termination;
        }
        if self.iter >= self.config.max_iters {
            return self.finish(Termination::MaxIters);
        }
        if self.grad_norm() <= self.config.grad_tol {
            return self.finish(Termination::Converged);
        }
        let Some((x_new, eval_new)) = self.line_search() else {
            return self.finish(Termination::LineSearchFailed);
        };
        let s: Vec<f64> = x_new.iter().zip(&self.x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = eval_new
            .gradient
            .iter()
            .zip(&self.eval.gradient)
            .map(|(a, b)| a - b)
            .collect();
        self.history.push(s, y);
        self.x = x_new;
        self.eval = eval_new;
        self.iter += 1;
        self.since_resample += 1;

        if self.config.resample_every > 0
            && self.since_resample >= self.config.resample_every
            && self.try_resample()
        {
            self.window_start = self.trace.len();
        }
        self.trace.push(TraceRow {
            iter: self.iter,
            energy: self.eval.energy,
            elastic: self.eval.elastic,
            length: self.eval.length,
            grad_norm: self.grad_norm(),
        });

        if self.check_degeneration {
            let net = self.network();
            if self.layout.shortest_curve_ratio(&net) < DEGENERATION_RATIO {
                return self.finish(Termination::Degenerated);
            }
        }
        let w = self.config.stall_window;
        if self.trace.len() > w && self.trace.len() - 1 - w >= self.window_start {
            let old = self.trace[self.trace.len() - 1 - w].energy;
            if old - self.eval.energy <= self.config.energy_rel_tol * self.eval.energy {
                return self.finish(Termination::Converged);
            }
        }
        None
    }

    fn finish(&mut self, t: Termination) -> Option<Termination> {
        self.termination = Some(t);
        self.termination
    }

    fn line_search(&mut self) -> Option<(Vec<f64>, Evaluation)> {
        for attempt in 0..2 {
            let g = &self.eval.gradient;
            let precond = &self.precond;
            let mut d = self.history.direction(g, |v| precond.apply(v));
            let mut slope = dot(g, &d);
            if self.history.is_empty() || !(slope < 0.0) {
                self.history.clear();
                d = precond.apply(g);
                let dmax = d.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                let scale = self.config.initial_step * self.mean_edge() / dmax;
                d.iter_mut().for_each(|v| *v *= -scale);
                slope = dot(g, &d);
            }
            let mut t = 1.0;
            for _ in 0..self.config.max_backtracks {
                let x: Vec<f64> = self.x.iter().zip(&d).map(|(a, b)| a + t * b).collect();
                if let Some(e) = self.layout.evaluate(&x) {
                    if e.energy <= self.eval.energy + self.config.armijo * t * slope {
                        return Some((x, e));
                    }
                }
                t *= self.config.backtrack_factor;
            }
            if attempt == 0 && !self.history.is_empty() {
                self.history.clear();
            } else {
                break;
            }
        }
        None
    }

    fn build_layout(network: &Network, mirror: bool) -> Result<Layout> {
        if mirror {
            Layout::mirrored(network, Dof::NormalOffsets)
        } else {
            Layout::for_network(network, Dof::NormalOffsets)
        }
    }

    /// Whether a resampling was accepted.
    fn try_resample(&mut self) -> bool {
        self.since_resample = 0;
        let before = self.eval.energy;
        let current = self.network();
        let spacing = current
            .curves()
            .iter()
            .map(spacing_ratio)
            .fold(1.0_f64, f64::max);
        let mirror = self.layout.is_mirrored();
        let candidate = resample_network(&current, None).and_then(|n| {
            let n = if mirror { remirror(&n)? } else { n };
            let layout = Self::build_layout(&n, mirror)?;
            let x = layout.encode(&n);
            Ok((layout, x))
        });
        let Ok((layout, x)) = candidate else {
            return false;
        };
        let Some(eval) = layout.evaluate(&x) else {
            return false;
        };
        let forced = spacing > self.config.resample_spacing_ratio;
        let accepted =
            eval.energy <= before || (forced && eval.energy - before <= MAX_RESAMPLE_JUMP * before);
        self.resamples.push(ResampleEvent {
            iter: self.iter,
            before,
            after: eval.energy,
            accepted,
            forced,
        });
        if accepted {
            self.precond = layout.preconditioner();
            self.layout = layout;
            self.x = x;
            self.eval = eval;
            self.history.clear();
        }
        accepted
    }

    /// Runs until a termination condition holds.
    pub fn run(mut self) -> OptimizationResult {
        while self.step().is_none() {}
        self.into_result()
    }

    pub fn into_result(self) -> OptimizationResult {
        let final_network = self.network();
        let tol_pos = 1e-6 * final_network.bbox_diameter().max(1.0);
        let constraint_violation = validate(&final_network, tol_pos, 1e-6).unwrap_or_else(|e| {
            ValidationReport {
                valid: false,
                junction_gap: f64::NAN,
                angle_defect: f64::NAN,
                issues: vec![e.to_string()],
            }
        });
        OptimizationResult {
            final_network,
            energy_trace: self.trace.iter().map(|r| r.energy).collect(),
            grad_norm_trace: self.trace.iter().map(|r| r.grad_norm).collect(),
            trace: self.trace,
            resamples: self.resamples,
            constraint_violation,
            termination: self.termination.unwrap_or(Termination::MaxIters),
            iterations: self.iter,
        }
    }
}

/// Gradient of the discrete `F` with respect to the free variables of the
/// network's point-coordinate layout: junction positions and frame angles
/// first, then the coordinates of every free point.
pub fn discrete_gradient(network: &Network) -> Result<Vec<f64>> {
    let layout = Layout::for_network(network, Dof::Points)?;
    layout
        .evaluate(&layout.encode(network))
        .map(|e| e.gradient)
        .ok_or_else(|| Error::InvalidInput("network has no finite energy".into()))
}

pub fn minimize(network: &Network, config: OptimizationConfig) -> Result<OptimizationResult> {
    Ok(Minimizer::new(network, config)?.run())
}

pub fn minimize_symmetric_double_drop(
    network: &Network,
    config: OptimizationConfig,
) -> Result<OptimizationResult> {
    Ok(Minimizer::symmetric_double_drop(network, config)?.run())
}
