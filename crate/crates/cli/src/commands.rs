use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use elastinet::bounds::{
    drop_bound_check, gauss_bonnet_check, pair_bound_check, theta_lower_bound_check,
    turning_cauchy_schwarz, PiecewiseClosedCurve,
};
use elastinet::energy::{energy, penalized_energy};
use elastinet::geometry::{vertex_curvature, DiscreteCurve};
use elastinet::injectivity::injectivity_report;
use elastinet::io::{from_json, to_json};
use elastinet::network::{
    generalized_bubble_energy, make_circle, make_degenerate_figure_eight, make_ellipse,
    make_generalized_bubble, make_standard_double_bubble, make_symmetric_double_drop,
    make_teardrop, optimal_bubble_radius, validate_default, DEFAULT_TOL_ANG,
};
use elastinet::optimize::{
    minimize, minimize_symmetric_double_drop, OptimizationConfig, Termination,
};
use elastinet::recovery::recovery_sequence;
use elastinet::svg::render_svg;
use elastinet::{Error, Network, NetworkKind};
use serde::Serialize;
use serde_json::{json, Value};

use crate::failure::{Code, Failure, Outcome};
use crate::manifest::OutputDir;

/// `println!` that ignores a closed stdout, as when piped into `head`.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

pub const SEED_VAR: &str = "ELASTINET_SEED";
const SVG_WIDTH: u32 = 640;

fn read_text(path: &Path) -> Outcome<String> {
    fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(|e| Failure::new(Code::Input, e))
}

fn read_network(path: &Path) -> Outcome<Network> {
    let text = read_text(path)?;
    from_json(&text).map_err(|e| Failure::new(Code::Input, anyhow::anyhow!("{}: {e}", path.display())))
}

/// Reads and validates; an invalid network is a validation failure.
fn read_valid_network(path: &Path) -> Outcome<Network> {
    let network = read_network(path)?;
    let report = validate_default(&network)?;
    if !report.valid {
        return Err(Failure::new(
            Code::Validation,
            anyhow::anyhow!("{}: {}", path.display(), report.issues.join("; ")),
        ));
    }
    Ok(network)
}

fn pretty(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

pub fn validate(input: &Path) -> Outcome {
    let network = read_network(input)?;
    let report = validate_default(&network)?;
    outln!("{}", pretty(&report));
    if report.valid {
        Ok(())
    } else {
        Err(Failure::new(Code::Validation, anyhow::anyhow!("{}", report.issues.join("; "))))
    }
}

pub fn energy_report(input: &Path, alpha: f64, as_json: bool) -> Outcome {
    let network = read_valid_network(input)?;
    let report = penalized_energy(&network, alpha)?;
    if as_json {
        outln!("{}", pretty(&report));
        return Ok(());
    }
    outln!("{:>6} {:>14} {:>14} {:>14}", "curve", "length", "elastic", "F_alpha");
    for (i, c) in report.per_curve.iter().enumerate() {
        outln!("{i:>6} {:>14.6} {:>14.6} {:>14.6}", c.length, c.elastic, c.penalized);
    }
    outln!(
        "{:>6} {:>14.6} {:>14.6} {:>14.6}",
        "total", report.length, report.elastic, report.penalized
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct BoundRow {
    name: String,
    lhs: f64,
    rhs: f64,
    holds: bool,
}

impl BoundRow {
    fn new(name: impl Into<String>, lhs: f64, rhs: f64, holds: bool) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
            holds,
        }
    }
}

/// Splits a closed curve at the vertices turning by more than
/// `threshold`, which become corners.
fn closed_with_corners(curve: &DiscreteCurve, threshold: f64) -> Outcome<PiecewiseClosedCurve> {
    let turning = vertex_curvature(curve)?;
    let corners: Vec<usize> = turning
        .iter()
        .enumerate()
        .filter(|(_, v)| v.turning.abs() > threshold)
        .map(|(i, _)| i)
        .collect();
    if corners.is_empty() {
        return Ok(PiecewiseClosedCurve::smooth(curve)?);
    }
    let pts = curve.points();
    let n = pts.len();
    let mut arcs = Vec::with_capacity(corners.len());
    for (k, &start) in corners.iter().enumerate() {
        let end = corners[(k + 1) % corners.len()];
        let span = if end > start { end - start } else { end + n - start };
        let arc: Vec<_> = (0..=span).map(|j| pts[(start + j) % n]).collect();
        arcs.push(DiscreteCurve::open(arc)?);
    }
    Ok(PiecewiseClosedCurve::with_corners(arcs, 0.0)?)
}

pub fn bounds(input: &Path, corner_threshold: Option<f64>, as_json: bool) -> Outcome {
    let network = read_valid_network(input)?;
    let mut rows = Vec::new();
    match network.kind() {
        NetworkKind::Closed => {
            let curve = &network.curves()[0];
            let loop_ = match corner_threshold {
                Some(t) => closed_with_corners(curve, t)?,
                None => PiecewiseClosedCurve::smooth(curve)?,
            };
            let gb = gauss_bonnet_check(&loop_)?;
            rows.push(BoundRow::new("gauss_bonnet", gb.lhs, gb.rhs, gb.holds));
        }
        NetworkKind::Drop => {
            let b = drop_bound_check(&network)?;
            rows.push(BoundRow::new("drop", b.lhs, b.rhs, b.holds));
        }
        NetworkKind::DoubleDrop | NetworkKind::DegenerateTheta => {
            for (i, c) in network.curves().iter().enumerate() {
                let b = drop_bound_check(&Network::drop_curve(c.clone()))?;
                rows.push(BoundRow::new(format!("drop[{i}]"), b.lhs, b.rhs, b.holds));
            }
        }
        NetworkKind::Theta | NetworkKind::GeneralizedTheta => {
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                let pair = PiecewiseClosedCurve::theta_pair(&network, i, j)?;
                let gb = gauss_bonnet_check(&pair)?;
                rows.push(BoundRow::new(format!("gauss_bonnet[{i},{j}]"), gb.lhs, gb.rhs, gb.holds));
                if network.kind() == NetworkKind::Theta {
                    let b = pair_bound_check(&pair, DEFAULT_TOL_ANG)?;
                    rows.push(BoundRow::new(format!("pair[{i},{j}]"), b.lhs, b.rhs, b.holds));
                }
            }
            if network.kind() == NetworkKind::Theta {
                let t = theta_lower_bound_check(&network)?;
                rows.push(BoundRow::new("theta_4pi", t.energy, t.bound, t.holds));
            }
        }
    }
    for (i, c) in network.curves().iter().enumerate() {
        let b = turning_cauchy_schwarz(c)?;
        // lhs <= rhs here, reported as written
        rows.push(BoundRow::new(format!("cauchy_schwarz[{i}]"), b.lhs, b.rhs, b.holds));
    }
    if as_json {
        outln!("{}", pretty(&rows));
    } else {
        outln!("{:<22} {:>14} {:>14} {:>6}", "bound", "lhs", "rhs", "holds");
        for r in &rows {
            outln!("{:<22} {:>14.6} {:>14.6} {:>6}", r.name, r.lhs, r.rhs, r.holds);
        }
    }
    Ok(())
}

fn load_config(path: Option<&Path>) -> Outcome<OptimizationConfig> {
    let mut config = match path {
        Some(p) => serde_json::from_str(&read_text(p)?)
            .map_err(|e| Failure::input(format!("{}: {e}", p.display())))?,
        None => OptimizationConfig::default(),
    };
    if let Ok(seed) = std::env::var(SEED_VAR) {
        config.seed = seed
            .trim()
            .parse()
            .map_err(|_| Failure::input(format!("{SEED_VAR}={seed:?} is not an unsigned integer")))?;
    }
    config.validate()?;
    Ok(config)
}

pub fn minimize_cmd(input: &Path, config_path: Option<&Path>, out: &Path, symmetric: bool) -> Outcome {
    let network = read_valid_network(input)?;
    let config = load_config(config_path)?;
    let dir = OutputDir::create(out)?;
    let result = if symmetric {
        minimize_symmetric_double_drop(&network, config.clone())?
    } else {
        minimize(&network, config.clone())?
    };
    let final_network = &result.final_network;
    let injectivity = injectivity_report(final_network);
    if !injectivity.is_injective() {
        eprintln!(
            "warning: final network has {} self-intersections or crossings",
            injectivity.total()
        );
    }
    let summary = json!({
        "final_energy": result.final_energy(),
        "initial_energy": result.energy_trace[0],
        "termination": result.termination,
        "iterations": result.iterations,
        "trace_nonincreasing": result.trace_nonincreasing(),
        "constraint_violation": result.constraint_violation,
        "resamples": result.resamples,
        "injectivity": injectivity,
    });
    dir.write("result.json", &pretty(&summary))?;
    dir.write("network.json", &to_json(final_network))?;
    dir.write("trace.csv", &result.trace_csv())?;
    dir.write("before.svg", &render_svg(&network, SVG_WIDTH))?;
    dir.write("after.svg", &render_svg(final_network, SVG_WIDTH))?;
    let config_echo = serde_json::to_value(&config).expect("config serializes");
    dir.finish("minimize", Some(input), config_echo, Some(config.seed))?;
    outln!(
        "F = {:.9} after {} iterations ({})",
        result.final_energy(),
        result.iterations,
        serde_json::to_value(result.termination).expect("termination serializes")
    );
    match result.termination {
        Termination::Converged | Termination::MaxIters => Ok(()),
        t => Err(Failure::new(Code::Optimization, anyhow::anyhow!("minimization stopped: {t:?}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Circle,
    Ellipse,
    DoubleBubble,
    Generalized,
    Teardrop,
    DoubleDrop,
    FigureEight,
}

#[derive(Debug, Clone, clap::Args, Serialize)]
pub struct ShapeParams {
    /// Circle or double bubble radius (default: 1, or the optimal radius
    /// for the double bubble).
    #[arg(long)]
    pub radius: Option<f64>,
    /// Ellipse semi-axes.
    #[arg(long, default_value_t = 2.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    /// Generalized bubble angles in radians.
    #[arg(long, default_value_t = 2.0 * PI / 3.0)]
    pub alpha1: f64,
    #[arg(long, default_value_t = 2.0 * PI / 3.0)]
    pub alpha2: f64,
    /// Teardrop size.
    #[arg(long, default_value_t = 2.0)]
    pub size: f64,
    /// Points per curve.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
}

fn build_reference(shape: Shape, p: &ShapeParams) -> Outcome<Network> {
    Ok(match shape {
        Shape::Circle => make_circle(p.radius.unwrap_or(1.0), p.n)?,
        Shape::Ellipse => make_ellipse(p.a, p.b, p.n)?,
        Shape::DoubleBubble => {
            make_standard_double_bubble(p.radius.unwrap_or_else(optimal_bubble_radius), p.n)?
        }
        Shape::Generalized => make_generalized_bubble(p.alpha1, p.alpha2, p.n)?,
        Shape::Teardrop => make_teardrop(p.size, p.n)?,
        Shape::DoubleDrop => make_symmetric_double_drop(&make_teardrop(p.size, p.n)?.curves()[0])?,
        Shape::FigureEight => make_degenerate_figure_eight(p.n)?,
    })
}

/// Result of a command that produces one main file.
struct Artifact<'a> {
    command: &'static str,
    input: Option<&'a Path>,
    config: Value,
    file_name: &'static str,
    contents: String,
    network: Option<&'a Network>,
    summary: Value,
}

/// Writes the artifact to stdout and the summary to stderr without an
/// output directory; otherwise stores both and prints the summary.
fn emit(out: Option<&Path>, a: Artifact<'_>) -> Outcome {
    let Artifact {
        command,
        input,
        config,
        file_name: artifact_name,
        contents: artifact,
        network,
        summary,
    } = a;
    let summary = &summary;
    match out {
        None => {
            outln!("{}", artifact.trim_end());
            eprintln!("{}", pretty(summary));
        }
        Some(dir) => {
            let dir = OutputDir::create(dir)?;
            dir.write(artifact_name, &artifact)?;
            if let Some(net) = network {
                dir.write("network.svg", &render_svg(net, SVG_WIDTH))?;
            }
            dir.write("report.json", &pretty(summary))?;
            dir.finish(command, input, config, None)?;
            outln!("{}", pretty(summary));
        }
    }
    Ok(())
}

pub fn reference(shape: Shape, params: &ShapeParams, out: Option<&Path>) -> Outcome {
    let network = build_reference(shape, params)?;
    let report = penalized_energy(&network, 1.0)?;
    let summary = json!({
        "shape": shape,
        "kind": network.kind().as_str(),
        "energy": report.penalized,
        "elastic": report.elastic,
        "length": report.length,
    });
    let config = json!({ "shape": shape, "params": params });
    emit(
        out,
        Artifact {
            command: "reference",
            input: None,
            config,
            file_name: "network.json",
            contents: to_json(&network),
            network: Some(&network),
            summary,
        },
    )
}

pub fn recovery(input: &Path, n: usize, out: Option<&Path>) -> Outcome {
    let degenerate = read_network(input)?;
    let theta = recovery_sequence(&degenerate, n)?;
    let relaxed = energy(&degenerate)?;
    let value = energy(&theta)?;
    let summary = json!({
        "n": n,
        "relaxed_energy": relaxed,
        "energy": value,
        "defect": value - relaxed,
        "expected_defect": 3.0 / n as f64,
    });
    emit(
        out,
        Artifact {
            command: "recovery",
            input: Some(input),
            config: json!({ "n": n }),
            file_name: "network.json",
            contents: to_json(&theta),
            network: Some(&theta),
            summary,
        },
    )
}

/// Comma-separated values, each a number or `start:stop:count`.
pub fn parse_grid(text: &str, degrees: bool) -> Outcome<Vec<f64>> {
    let scale = if degrees { PI / 180.0 } else { 1.0 };
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Failure::input(format!("bad grid value {s:?}")))
        };
        match parts.as_slice() {
            [v] => out.push(num(v)? * scale),
            [a, b, count] => {
                let (a, b) = (num(a)?, num(b)?);
                let count: usize = count
                    .trim()
                    .parse()
                    .map_err(|_| Failure::input(format!("bad grid count in {item:?}")))?;
                match count {
                    0 => {}
                    1 => out.push(a * scale),
                    _ => out.extend(
                        (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1) as f64) * scale),
                    ),
                }
            }
            _ => return Err(Failure::input(format!("bad grid entry {item:?}"))),
        }
    }
    if out.is_empty() {
        return Err(Failure::input("empty grid"));
    }
    Ok(out)
}

pub fn sweep(alpha1: &str, alpha2: &str, degrees: bool, out: Option<&Path>) -> Outcome {
    let g1 = parse_grid(alpha1, degrees)?;
    let g2 = parse_grid(alpha2, degrees)?;
    let mut csv = String::from("alpha1,alpha2,energy,status\n");
    let mut skipped = 0;
    for &a1 in &g1 {
        for &a2 in &g2 {
            match generalized_bubble_energy(a1, a2) {
                Ok(f) => writeln!(csv, "{a1:.17e},{a2:.17e},{f:.17e},ok"),
                Err(e) => {
                    skipped += 1;
                    let status = match e {
                        Error::SingularAngle(_) => "singular",
                        _ => "out_of_domain",
                    };
                    writeln!(csv, "{a1:.17e},{a2:.17e},,{status}")
                }
            }
            .expect("writing to a String");
        }
    }
    let summary = json!({ "rows": g1.len() * g2.len(), "skipped": skipped });
    let config = json!({ "alpha1_grid": alpha1, "alpha2_grid": alpha2, "degrees": degrees });
    emit(
        out,
        Artifact {
            command: "sweep",
            input: None,
            config,
            file_name: "sweep.csv",
            contents: csv,
            network: None,
            summary,
        },
    )
}

pub fn path_arg(p: &Option<PathBuf>) -> Option<&Path> {
    p.as_deref()
}
