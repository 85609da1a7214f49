//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary
//! (`harness = false`) and exits non-zero when any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rollekit::correct::{build_constant_correction, build_correction};
use rollekit::ode::rk4_step;
use rollekit::rolle::{
    implied_rolle, ode_rhs, pointwise_xi, reconstruct_error, seed_scan, solve_trajectory,
    InterpolationProblem, RolleTrajectory, TrajectoryOptions, DEFAULT_STEP,
};
use rollekit::{parse, Expression};

const F: &str = "exp(x)*sin(x)";

type Outcome = Result<String, String>;

struct Example {
    prob: InterpolationProblem,
    seeds: Vec<f64>,
    branches: Vec<RolleTrajectory>,
}

fn example(nodes: Vec<f64>, x_z: f64) -> Example {
    let prob = InterpolationProblem::from_text(F, nodes).expect("problem");
    let seeds = seed_scan(&prob, x_z, 2000).expect("seeds");
    let branches = seeds
        .iter()
        .map(|s| solve_trajectory(&prob, s, DEFAULT_STEP, &TrajectoryOptions::default()).expect("trajectory"))
        .collect();
    Example {
        seeds: seeds.iter().map(|s| s.xi_z).collect(),
        prob,
        branches,
    }
}

fn near(label: &str, got: f64, want: f64, tol: f64) -> Outcome {
    if (got - want).abs() <= tol {
        Ok(format!("{label} = {got:.6}"))
    } else {
        Err(format!("{label} = {got:.6}, want {want} ± {tol:e}"))
    }
}

fn at_most(label: &str, got: f64, bound: f64) -> Outcome {
    if got <= bound {
        Ok(format!("{label} = {got:.3e}"))
    } else {
        Err(format!("{label} = {got:.3e} > {bound:e}"))
    }
}

fn all(parts: Vec<Outcome>) -> Outcome {
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for p in parts {
        match p {
            Ok(s) => ok.push(s),
            Err(s) => bad.push(s),
        }
    }
    if bad.is_empty() {
        Ok(ok.join("; "))
    } else {
        Err(bad.join("; "))
    }
}

fn seeds_match(ex: &Example, want: [f64; 2]) -> Outcome {
    if ex.seeds.len() != 2 {
        return Err(format!("expected two seeds, got {:?}", ex.seeds));
    }
    all(vec![
        near("seed 1", ex.seeds[0], want[0], 1e-3),
        near("seed 2", ex.seeds[1], want[1], 1e-3),
    ])
}

fn max_diff(ex: &Example, branch: usize) -> f64 {
    reconstruct_error(&ex.prob, &ex.branches[branch]).expect("reconstruction").max_abs_diff
}

fn c1(ex1: &Example) -> Outcome {
    seeds_match(ex1, [2.1931, 4.6631])
}

fn c2(ex1: &Example) -> Outcome {
    all(vec![
        at_most("branch 2 max diff", max_diff(ex1, 1), 1e-9),
        at_most("branch 1 max diff", max_diff(ex1, 0), 1e-9),
    ])
}

fn c3(ex2: &Example) -> Outcome {
    let c = ex2.prob.interpolant().coeffs();
    all(vec![
        near("a", c[2], -9.9476, 1e-3),
        near("b", c[1], 23.2546, 1e-3),
        near("c", c[0], 0.0, 1e-3),
    ])
}

fn c4(ex2: &Example) -> Outcome {
    all(vec![
        seeds_match(ex2, [1.7845, 3.8165]),
        at_most("branch 2 max diff", max_diff(ex2, 1), 1e-9),
    ])
}

fn c5(ex2: &Example) -> Outcome {
    let got = |b: usize| implied_rolle(&ex2.branches[b], 2.0).map_err(|e| e.to_string());
    all(vec![
        got(0).and_then(|v| near("xi(2) branch 1", v, 2.0991, 5e-3)),
        got(1).and_then(|v| near("xi(2) branch 2", v, 3.7381, 5e-3)),
    ])
}

fn c6(ex1: &Example) -> Outcome {
    let res = build_correction(&ex1.prob, &ex1.branches[0], 6).map_err(|e| e.to_string())?;
    let factor = res.improvement_factor;
    all(vec![
        near("max |f - P_1|", res.max_err_before, 75.0, 2.0),
        at_most("max |f - corrected|", res.max_err_after, 1e-2),
        if factor >= 5e3 {
            Ok(format!("improvement {factor:.0}x"))
        } else {
            Err(format!("improvement {factor:.0}x < 5e3"))
        },
    ])
}

fn c7(examples: &[&Example]) -> Outcome {
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for ex in examples {
        for traj in &ex.branches {
            for s in &traj.samples {
                let r = ex.prob.normalized_residual(s.x, s.xi).map_err(|e| e.to_string())?;
                worst = worst.max(r.abs());
                count += 1;
            }
        }
    }
    at_most(&format!("worst normalized residual over {count} samples"), worst, 1e-9)
}

fn c8(examples: &[&Example]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for ex in examples {
        for traj in &ex.branches {
            let (lo, hi) = (traj.first_x(), traj.last_x());
            let mut checked = 0;
            while checked < 100 {
                let x = rng.gen_range(lo..hi);
                let Some(xi) = traj.xi_at(x) else { continue };
                let oracle = pointwise_xi(&ex.prob, x, Some(xi)).map_err(|e| e.to_string())?[0];
                worst = worst.max((xi - oracle).abs());
                checked += 1;
            }
        }
    }
    at_most("worst |trajectory - oracle| over 400 points", worst, 1e-6)
}

fn c9() -> Outcome {
    let mut parts = Vec::new();
    for (f, nodes) in [("x^2", vec![0.0, 1.0]), ("x^3", vec![0.0, 1.0, 2.0])] {
        let prob = InterpolationProblem::from_text(f, nodes).map_err(|e| e.to_string())?;
        let res = build_constant_correction(&prob).map_err(|e| e.to_string())?;
        parts.push(at_most(&format!("{f}: max |f - corrected|"), res.max_err_after, 1e-10));
    }
    all(parts)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn c10() -> Outcome {
    let f = parse(F).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for k in 1..=6 {
        let d: Expression = f.derivative(k);
        for _ in 0..50 {
            let x: f64 = rng.gen_range(-4.0..8.0);
            let amp = 2f64.powf(k as f64 / 2.0) * x.exp();
            let exact = amp * (x + k as f64 * PI / 4.0).sin();
            // relative to the envelope; sin(x + k pi/4) itself crosses zero
            let err = (d.eval(x).map_err(|e| e.to_string())? - exact).abs() / amp;
            worst = worst.max(err);
        }
    }
    let derivs = at_most("derivative relative error", worst, 1e-10);

    let df = |x: f64| x.exp() * (x.sin() + x.cos());
    let d2 = |x: f64| 2.0 * x.exp() * x.cos();
    let d3 = |x: f64| 2.0 * x.exp() * (x.cos() - x.sin());
    let d4 = |x: f64| -4.0 * x.exp() * x.sin();
    let end = 1.5 * PI;

    // linear case
    let m = -(end.exp()) / end;
    let eq_linear = |x: f64, xi: f64| {
        let pi = x * (x - end);
        let dpi = 2.0 * x - end;
        (2.0 * (df(x) - m) - d2(xi) * dpi) / (pi * d3(xi))
    };
    // quadratic through (0,0), (2, f(2)), (end, f(end))
    let f2 = 2f64.exp() * 2f64.sin();
    let fe = end.exp() * end.sin();
    let a = (fe / end - f2 / 2.0) / (end - 2.0);
    let b = f2 / 2.0 - 2.0 * a;
    let eq_quadratic = |x: f64, xi: f64| {
        let pi = x * (x - 2.0) * (x - end);
        let dpi = (x - 2.0) * (x - end) + x * (x - end) + x * (x - 2.0);
        (6.0 * (df(x) - (2.0 * a * x + b)) - d3(xi) * dpi) / (pi * d4(xi))
    };

    let p1 = InterpolationProblem::from_text(F, vec![0.0, end]).map_err(|e| e.to_string())?;
    let p2 = InterpolationProblem::from_text(F, vec![0.0, 2.0, end]).map_err(|e| e.to_string())?;
    let mut worst_rhs = 0.0f64;
    let mut checked = 0;
    while checked < 200 {
        let x: f64 = rng.gen_range(0.05..end - 0.05);
        let xi: f64 = rng.gen_range(0.05..end - 0.05);
        if (x - 2.0).abs() < 0.05 || d3(xi).abs() < 1e-3 || d4(xi).abs() < 1e-3 {
            continue;
        }
        let lin = ode_rhs(&p1, x, xi).map_err(|e| e.to_string())?;
        let quad = ode_rhs(&p2, x, xi).map_err(|e| e.to_string())?;
        worst_rhs = worst_rhs.max(rel(lin, eq_linear(x, xi))).max(rel(quad, eq_quadratic(x, xi)));
        checked += 1;
    }
    all(vec![derivs, at_most("ode_rhs relative error", worst_rhs, 1e-12)])
}

/// Evaluates `traj` at `x` with one RK4 step from the nearest sample at or
/// below `x`, avoiding the h^2 error of linear interpolation.
fn advance_to(prob: &InterpolationProblem, traj: &RolleTrajectory, x: f64) -> Option<f64> {
    traj.xi_at(x)?;
    let idx = traj.samples.partition_point(|s| s.x <= x).checked_sub(1)?;
    let s = traj.samples[idx];
    if x - s.x > traj.step_size * 1.0001 {
        return None;
    }
    if x == s.x {
        return Some(s.xi);
    }
    rk4_step(&mut |x, xi| ode_rhs(prob, x, xi), s.x, s.xi, x - s.x).ok()
}

fn c11(ex1: &Example) -> Outcome {
    let other = example(ex1.prob.nodes().as_slice().to_vec(), 1e-4);
    if other.branches.len() != ex1.branches.len() {
        return Err(format!("x_z = 1e-4 found {} seeds", other.branches.len()));
    }
    let mut worst = 0.0f64;
    for (a, b) in ex1.branches.iter().zip(&other.branches) {
        for s in &b.samples {
            if let Some(xi) = advance_to(&ex1.prob, a, s.x) {
                worst = worst.max((xi - s.xi).abs());
            }
        }
    }
    at_most("max |xi(x_z=1e-5) - xi(x_z=1e-4)|", worst, 1e-8)
}

fn main() -> ExitCode {
    let ex1 = example(vec![0.0, 1.5 * PI], 1e-5);
    let ex2 = example(vec![0.0, 2.0, 1.5 * PI], 1e-5);

    let results: Vec<(&str, Outcome)> = vec![
        ("example-1 seeds", c1(&ex1)),
        ("example-1 reconstruction", c2(&ex1)),
        ("example-2 interpolant", c3(&ex2)),
        ("example-2 seeds and reconstruction", c4(&ex2)),
        ("implied Rolle numbers at x = 2", c5(&ex2)),
        ("degree-6 correction", c6(&ex1)),
        ("identity residual on every sample", c7(&[&ex1, &ex2])),
        ("trajectory vs pointwise oracle", c8(&[&ex1, &ex2])),
        ("polynomial exactness", c9()),
        ("derivative engine and ODE field", c10()),
        ("seed independence", c11(&ex1)),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} criteria, {} failed", results.len(), failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
