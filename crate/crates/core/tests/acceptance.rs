//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit status
//! if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use elastinet::bounds::{
    drop_bound_check, gauss_bonnet_check, pair_bound_check, theta_lower_bound_check,
    PiecewiseClosedCurve,
};
use elastinet::energy::{energy, equipartition_defect, optimal_rescale, scaling_identity_check};
use elastinet::network::{
    generalized_bubble_energy, make_circle, make_degenerate_figure_eight, make_ellipse,
    make_standard_double_bubble, make_symmetric_double_drop, make_teardrop, optimal_bubble_radius,
    validate_default,
};
use elastinet::optimize::{
    discrete_gradient, minimize, minimize_symmetric_double_drop, Dof, Layout, OptimizationConfig,
};
use elastinet::recovery::recovery_sequence;
use elastinet::samples::{random_drop, random_network, random_piecewise_closed, random_theta, rng};
use elastinet::stationarity::junction_residuals;
use elastinet::Point2;

const DOUBLE_BUBBLE: f64 = 18.4059;
const MINIMAL_DROP: f64 = 10.60375;
const FIGURE_EIGHT: f64 = 21.2075;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn circle_optimum() -> Outcome {
    let ellipse = make_ellipse(2.0, 1.0, 200).unwrap();
    let r = minimize(&ellipse, OptimizationConfig::default()).unwrap();
    let f = r.final_energy();
    let err = rel(f, 4.0 * PI);
    outcome(
        err <= 5e-3,
        format!("F = {f:.6}, rel err {err:.2e} (tol 5e-3), {:?}", r.termination),
    )
}

fn double_bubble_energy() -> Outcome {
    let net = make_standard_double_bubble(optimal_bubble_radius(), 400).unwrap();
    let f = energy(&net).unwrap();
    let err = rel(f, DOUBLE_BUBBLE);
    outcome(err <= 1e-3, format!("F = {f:.6}, rel err {err:.2e} (tol 1e-3)"))
}

fn generalized_consistency() -> Outcome {
    let a = 2.0 * PI / 3.0;
    let f = generalized_bubble_energy(a, a).unwrap();
    let closed = (2.0 / 3.0) * (8.0 * PI * (8.0 * PI + 3.0 * 3f64.sqrt())).sqrt();
    let err = (f - closed).abs();
    outcome(err <= 1e-9, format!("{f:.12} vs {closed:.12}, diff {err:.2e} (tol 1e-9)"))
}

/// Drop minimum, reused by the Figure Eight comparison.
fn minimal_drop(drop_energy: &mut f64) -> Outcome {
    let drop = make_teardrop(2.0, 300).unwrap();
    let r = minimize(&drop, OptimizationConfig::default()).unwrap();
    let f = r.final_energy();
    *drop_energy = f;
    let err = rel(f, MINIMAL_DROP);
    outcome(
        err <= 1e-2,
        format!("F = {f:.6}, rel err {err:.2e} (tol 1e-2), {:?}", r.termination),
    )
}

fn figure_eight(drop_energy: f64) -> Outcome {
    let drop = make_teardrop(2.0, 300).unwrap();
    let dd = make_symmetric_double_drop(&drop.curves()[0]).unwrap();
    let r = minimize_symmetric_double_drop(&dd, OptimizationConfig::default()).unwrap();
    let f = r.final_energy();
    let err = rel(f, FIGURE_EIGHT);
    let pair = (f - 2.0 * drop_energy).abs() / f;
    outcome(
        err <= 1e-2 && pair <= 1e-3,
        format!(
            "F = {f:.6}, rel err {err:.2e} (tol 1e-2); |F - 2 F_drop| / F = {pair:.2e} (tol 1e-3)"
        ),
    )
}

fn theta_descent() -> Outcome {
    let rbar = optimal_bubble_radius();
    let start = make_standard_double_bubble(rbar, 200).unwrap();
    let v = junction_residuals(&start).unwrap().junction_vector[0];
    let want = Point2::new(rbar.powi(-2), 0.0);
    let vec_err = v.distance(want);
    let r = minimize(&start, OptimizationConfig::default()).unwrap();
    let f = r.final_energy();
    let monotone = r.trace_nonincreasing();
    let in_range = (4.0 * PI..DOUBLE_BUBBLE).contains(&f);
    outcome(
        vec_err <= 1e-3 && monotone && in_range,
        format!(
            "junction vector ({:.5}, {:.5}) vs ({:.5}, 0), err {vec_err:.2e}; \
             trace nonincreasing {monotone}; F = {f:.6} in [4pi, {DOUBLE_BUBBLE}) {in_range}",
            v.x, v.y, want.x
        ),
    )
}

fn gauss_bonnet_suite() -> Outcome {
    let mut r = rng(7);
    let mut failures = 0;
    for _ in 0..100 {
        let curve = random_piecewise_closed(&mut r).unwrap();
        if !gauss_bonnet_check(&curve).unwrap().holds {
            failures += 1;
        }
    }
    let circle = make_circle(1.0, 360).unwrap();
    let report = gauss_bonnet_check(&PiecewiseClosedCurve::smooth(&circle.curves()[0]).unwrap()).unwrap();
    let gap = (report.lhs - report.rhs).abs();
    outcome(
        failures == 0 && gap <= 1e-3,
        format!("{failures}/100 random curves violate; circle lhs - rhs = {gap:.2e} (tol 1e-3)"),
    )
}

fn lower_bound_suite() -> Outcome {
    let mut r = rng(11);
    let (mut checked, mut skipped, mut failures) = (0, 0, Vec::new());
    for k in 0..100 {
        let drop = random_drop(&mut r).unwrap();
        let theta = random_theta(&mut r).unwrap();
        for net in [&drop, &theta] {
            if !validate_default(net).unwrap().valid {
                skipped += 1;
                continue;
            }
            checked += 1;
        }
        if validate_default(&drop).unwrap().valid && !drop_bound_check(&drop).unwrap().holds {
            failures.push(format!("drop {k}"));
        }
        if validate_default(&theta).unwrap().valid {
            let t = theta_lower_bound_check(&theta).unwrap();
            if !(t.holds && t.pairs_hold) {
                failures.push(format!("theta {k}"));
            }
            for (i, j) in [(0, 1), (1, 2), (2, 0)] {
                let pair = PiecewiseClosedCurve::theta_pair(&theta, i, j).unwrap();
                if !pair_bound_check(&pair, 1e-9).unwrap().holds {
                    failures.push(format!("theta {k} pair ({i}, {j})"));
                }
            }
        }
    }
    outcome(
        failures.is_empty() && checked > 0,
        format!("{checked} valid instances, {skipped} skipped, failures {failures:?}"),
    )
}

fn scaling_suite() -> Outcome {
    let mut r = rng(13);
    let (mut worst_scaling, mut worst_equi) = (0.0_f64, 0.0_f64);
    for _ in 0..20 {
        let net = random_network(&mut r, 0.0).unwrap();
        let f = energy(&net).unwrap();
        for alpha in [0.5, 2.0, 4.0] {
            worst_scaling = worst_scaling.max(scaling_identity_check(&net, alpha).unwrap() / f);
        }
        let (_, rescaled) = optimal_rescale(&net).unwrap();
        worst_equi = worst_equi.max(equipartition_defect(&rescaled).unwrap());
    }
    outcome(
        worst_scaling <= 1e-9 && worst_equi <= 1e-6,
        format!(
            "worst scaling defect {worst_scaling:.2e} (tol 1e-9), worst equipartition defect {worst_equi:.2e} (tol 1e-6)"
        ),
    )
}

fn recovery() -> Outcome {
    let eight = make_degenerate_figure_eight(300).unwrap();
    let base = energy(&eight).unwrap();
    let mut worst = 0.0_f64;
    let mut rows = Vec::new();
    for n in [10, 100, 1000] {
        let theta = recovery_sequence(&eight, n).unwrap();
        let defect = energy(&theta).unwrap() - base;
        worst = worst.max((defect - 3.0 / n as f64).abs());
        rows.push(format!("n={n}: {defect:.9}"));
    }
    outcome(
        worst <= 1e-6,
        format!("{}; worst deviation from 3/n {worst:.2e} (tol 1e-6)", rows.join(", ")),
    )
}

fn gradient_oracle() -> Outcome {
    let mut r = rng(17);
    let step = 1e-6;
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let net = random_network(&mut r, 0.1).unwrap();
        let g = discrete_gradient(&net).unwrap();
        let layout = Layout::for_network(&net, Dof::Points).unwrap();
        let x = layout.encode(&net);
        let f = |x: &[f64]| energy(&layout.decode(x).unwrap()).unwrap();
        for k in 0..x.len() {
            let (mut xp, mut xm) = (x.clone(), x.clone());
            xp[k] += step;
            xm[k] -= step;
            let fd = (f(&xp) - f(&xm)) / (2.0 * step);
            worst = worst.max((fd - g[k]).abs() / g[k].abs().max(1.0));
        }
    }
    outcome(
        worst <= 1e-5,
        format!("worst componentwise error {worst:.2e} relative to max(|g|, 1) (tol 1e-5)"),
    )
}

fn timed(limit: Duration, run: impl FnOnce() -> Outcome) -> Outcome {
    let t = Instant::now();
    let mut o = run();
    let elapsed = t.elapsed();
    if elapsed > limit {
        o.pass = false;
    }
    o.detail = format!("{}; {:.2?} (limit {:?})", o.detail, elapsed, limit);
    o
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut drop_energy = f64::NAN;
    let results = [
        ("circle optimum", timed(secs(60), circle_optimum)),
        ("double bubble energy", timed(secs(1), double_bubble_energy)),
        ("generalized formula consistency", timed(secs(1), generalized_consistency)),
        ("minimal drop", timed(secs(300), || minimal_drop(&mut drop_energy))),
        ("figure eight", timed(secs(300), || figure_eight(drop_energy))),
        ("theta descent", timed(secs(600), theta_descent)),
        ("gauss-bonnet suite", timed(secs(30), gauss_bonnet_suite)),
        ("lower-bound suite", timed(secs(30), lower_bound_suite)),
        ("scaling and equipartition", timed(secs(1), scaling_suite)),
        ("recovery sequence", timed(secs(1), recovery)),
        ("gradient oracle", timed(secs(60), gradient_oracle)),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "{} criterion {:>2} ({name}): {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        if !o.pass {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
