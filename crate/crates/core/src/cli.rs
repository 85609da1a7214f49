//! Orchestration behind the `rollekit` binary: `solve`, `correct` and
//! `reproduce`, their artifacts and exit codes.
//!
//! Exit codes: 0 success, 1 a `reproduce` check failed, 2 invalid
//! configuration, 3 numerical failure (including I/O while writing
//! artifacts).

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::correct::{build_constant_correction, build_correction, error_table, CorrectError, CorrectionResult, ERROR_GRID_POINTS};
use crate::expr::parse;
use crate::io::{line_chart_svg, split_at_bands, write_error_csv, write_trajectory_csv, Scale};
use crate::poly::{NodeSet, Polynomial};
use crate::rolle::{
    endpoint_rolle, implied_rolle, reconstruct_error, seed_scan, solve_trajectory, Endpoint,
    InterpolationProblem, Rebridge, RolleError, RolleSeed, RolleTrajectory, TrajectoryOptions,
    DEFAULT_SEED_ABSCISSA, DEFAULT_STEP,
};

pub const DEFAULT_SEED_GRID: usize = 2000;
pub const DEFAULT_FIT_DEGREE: usize = 6;
pub const DEFAULT_OUTPUT_DIR: &str = "rollekit-out";
pub const OUTPUT_ENV: &str = "ROLLEKIT_OUT";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{message}")]
    Numerical {
        kind: &'static str,
        message: String,
        details: Value,
    },
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical { .. } | CliError::Io { .. } => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numerical { kind, .. } => kind,
            CliError::Io { .. } => "io",
        }
    }

    /// Machine-readable form written to stderr by the binary.
    pub fn to_json(&self) -> Value {
        let mut out = json!({
            "error": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        if let CliError::Numerical { details, .. } = self {
            if !details.is_null() {
                out["details"] = details.clone();
            }
        }
        out
    }

    fn numerical(err: RolleError) -> CliError {
        let kind = match err {
            RolleError::DegenerateConstant { .. } => "degenerate_constant_derivative",
            RolleError::NoRoot { .. } => "no_seed",
            RolleError::BranchLoss { .. } => "branch_loss",
            RolleError::Escape { .. } => "escape",
            _ => "numerical",
        };
        CliError::Numerical {
            kind,
            message: err.to_string(),
            details: Value::Null,
        }
    }
}

impl From<CorrectError> for CliError {
    fn from(err: CorrectError) -> Self {
        match err {
            CorrectError::Rolle(e) => CliError::numerical(e),
            other => CliError::Numerical {
                kind: "fit",
                message: other.to_string(),
                details: Value::Null,
            },
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

/// Which seed branches to process; branches are numbered from 1 in order of
/// increasing seed value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchSelection {
    All,
    One(usize),
}

impl FromStr for BranchSelection {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(BranchSelection::All);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(BranchSelection::One(k)),
            _ => Err(CliError::Config(format!(
                "branch must be a positive integer or `all`, got `{s}`"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub function_text: String,
    pub nodes: Vec<f64>,
    pub x_z: f64,
    pub step: f64,
    pub fit_degree: usize,
    pub branch: BranchSelection,
    pub polish: bool,
    pub output_dir: PathBuf,
    pub emit_plots: bool,
}

impl RunConfig {
    pub fn new(function_text: &str, nodes: Vec<f64>) -> Self {
        RunConfig {
            function_text: function_text.to_owned(),
            nodes,
            x_z: DEFAULT_SEED_ABSCISSA,
            step: DEFAULT_STEP,
            fit_degree: DEFAULT_FIT_DEGREE,
            branch: BranchSelection::All,
            polish: false,
            output_dir: PathBuf::from(DEFAULT_OUTPUT_DIR),
            emit_plots: false,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.nodes.len() < 2 {
            return Err(CliError::Config(format!(
                "need at least two nodes, got {}",
                self.nodes.len()
            )));
        }
        if let Some(bad) = self.nodes.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Config(format!("node {bad} is not finite")));
        }
        if let Some(w) = self.nodes.windows(2).find(|w| w[1] <= w[0]) {
            return Err(CliError::Config(format!(
                "nodes must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        let (lo, hi) = (self.nodes[0], self.nodes[self.nodes.len() - 1]);
        if !(self.x_z > lo && self.x_z < hi) {
            return Err(CliError::Config(format!(
                "seed abscissa {} must lie strictly inside ({lo}, {hi})",
                self.x_z
            )));
        }
        if self.nodes.contains(&self.x_z) {
            return Err(CliError::Config(format!(
                "seed abscissa {} is an interpolation node",
                self.x_z
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(CliError::Config(format!("step must be positive, got {}", self.step)));
        }
        Ok(())
    }

    fn problem(&self) -> Result<InterpolationProblem, CliError> {
        self.validate()?;
        let f = parse(&self.function_text)
            .map_err(|e| CliError::Config(format!("cannot parse function: {e}")))?;
        let nodes = NodeSet::new(self.nodes.clone()).map_err(|e| CliError::Config(e.to_string()))?;
        InterpolationProblem::new(f, nodes).map_err(CliError::numerical)
    }
}

/// Parses `0,1.5,4.71` style node lists.
pub fn parse_node_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("cannot parse node `{}`", s.trim())))
        })
        .collect()
}

/// Parses comma-separated constant expressions such as `0,2,3*pi/2`.
pub fn parse_node_exprs(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|s| {
            let e = parse(s.trim())
                .map_err(|e| CliError::Config(format!("node expression `{}`: {e}", s.trim())))?;
            if !e.root().is_constant() {
                return Err(CliError::Config(format!(
                    "node expression `{}` depends on x",
                    s.trim()
                )));
            }
            e.eval(0.0)
                .map_err(|e| CliError::Config(format!("node expression `{}`: {e}", s.trim())))
        })
        .collect()
}

/// Output directory: `ROLLEKIT_OUT` when set, otherwise `fallback`.
pub fn resolve_output_dir(fallback: &Path) -> PathBuf {
    match std::env::var_os(OUTPUT_ENV) {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => fallback.to_path_buf(),
    }
}

fn degenerate_error(prob: &InterpolationProblem, value: f64) -> CliError {
    let n1 = prob.degree() + 1;
    let formula = format!(
        "f(x) - P_{}(x) = {} / {}! * ({})",
        prob.degree(),
        value,
        n1,
        prob.node_poly()
    );
    CliError::Numerical {
        kind: "degenerate_constant_derivative",
        message: format!(
            "the derivative of order {n1} is the constant {value}; the remainder is exact for every xi"
        ),
        details: json!({
            "rolle_term": value,
            "factorial": prob.factorial(),
            "node_polynomial": prob.node_poly().coeffs(),
            "remainder": (prob.node_poly().scale(value / prob.factorial())).coeffs(),
            "delta_formula": formula,
        }),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ImpliedRolle {
    pub node: f64,
    pub xi: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Endpoints {
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BranchSummary {
    pub branch: usize,
    pub seed: RolleSeed,
    pub samples: usize,
    pub step: f64,
    pub max_identity_residual: f64,
    pub max_reconstruction_diff: f64,
    pub implied_rolle: Vec<ImpliedRolle>,
    pub endpoints: Endpoints,
    pub rebridges: Vec<Rebridge>,
    pub fallbacks: usize,
    pub trajectory_csv: String,
}

/// Contents of `summary.json`; see `docs/summary.schema.json`.
#[derive(Debug, Clone, Serialize)]
pub struct SolveSummary {
    pub function: String,
    pub nodes: Vec<f64>,
    pub degree: usize,
    pub x_z: f64,
    pub step: f64,
    pub polish: bool,
    pub interpolant: Polynomial,
    pub seeds: Vec<RolleSeed>,
    pub branches: Vec<BranchSummary>,
}

pub struct SolveOutcome {
    pub problem: InterpolationProblem,
    pub summary: SolveSummary,
    /// `(branch number, trajectory)` for every processed branch.
    pub trajectories: Vec<(usize, RolleTrajectory)>,
}

fn selected(branch: BranchSelection, seeds: &[RolleSeed]) -> Result<Vec<(usize, RolleSeed)>, CliError> {
    match branch {
        BranchSelection::All => Ok(seeds.iter().enumerate().map(|(i, s)| (i + 1, *s)).collect()),
        BranchSelection::One(k) if k <= seeds.len() => Ok(vec![(k, seeds[k - 1])]),
        BranchSelection::One(k) => Err(CliError::Config(format!(
            "branch {k} requested but only {} seed(s) were found",
            seeds.len()
        ))),
    }
}

/// Seeds, integrates and summarizes every requested branch. Pure
/// computation; see [`cmd_solve`] for the artifact-writing wrapper.
pub fn solve_problem(cfg: &RunConfig) -> Result<SolveOutcome, CliError> {
    let prob = cfg.problem()?;
    if let Some(value) = prob.constant_rolle_term() {
        return Err(degenerate_error(&prob, value));
    }
    let seeds = seed_scan(&prob, cfg.x_z, DEFAULT_SEED_GRID).map_err(CliError::numerical)?;
    let chosen = selected(cfg.branch, &seeds)?;
    let opts = TrajectoryOptions {
        polish: cfg.polish,
        ..TrajectoryOptions::default()
    };

    // branches are independent; solve them side by side
    let solved: Vec<Result<(usize, RolleTrajectory, BranchSummary), CliError>> =
        std::thread::scope(|scope| {
            let handles: Vec<_> = chosen
                .iter()
                .map(|&(k, seed)| {
                    let prob = &prob;
                    let opts = &opts;
                    scope.spawn(move || summarize_branch(prob, k, &seed, cfg.step, opts))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("branch solver panicked"))
                .collect()
        });

    let mut trajectories = Vec::new();
    let mut branches = Vec::new();
    for r in solved {
        let (k, traj, summary) = r?;
        trajectories.push((k, traj));
        branches.push(summary);
    }
    let summary = SolveSummary {
        function: cfg.function_text.clone(),
        nodes: cfg.nodes.clone(),
        degree: prob.degree(),
        x_z: cfg.x_z,
        step: cfg.step,
        polish: cfg.polish,
        interpolant: prob.interpolant().clone(),
        seeds,
        branches,
    };
    Ok(SolveOutcome {
        problem: prob,
        summary,
        trajectories,
    })
}

fn summarize_branch(
    prob: &InterpolationProblem,
    k: usize,
    seed: &RolleSeed,
    step: f64,
    opts: &TrajectoryOptions,
) -> Result<(usize, RolleTrajectory, BranchSummary), CliError> {
    let traj = solve_trajectory(prob, seed, step, opts).map_err(CliError::numerical)?;
    let recon = reconstruct_error(prob, &traj).map_err(CliError::numerical)?;
    let implied = prob
        .nodes()
        .interior()
        .iter()
        .map(|&node| {
            implied_rolle(&traj, node)
                .map(|xi| ImpliedRolle { node, xi })
                .map_err(CliError::numerical)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let endpoints = Endpoints {
        left: endpoint_rolle(&traj, Endpoint::Left).map_err(CliError::numerical)?,
        right: endpoint_rolle(&traj, Endpoint::Right).map_err(CliError::numerical)?,
    };
    let summary = BranchSummary {
        branch: k,
        seed: *seed,
        samples: traj.samples.len(),
        step,
        max_identity_residual: traj.max_residual,
        max_reconstruction_diff: recon.max_abs_diff,
        implied_rolle: implied,
        endpoints,
        rebridges: traj.rebridges.clone(),
        fallbacks: traj.fallbacks,
        trajectory_csv: trajectory_file(k),
    };
    Ok((k, traj, summary))
}

fn trajectory_file(k: usize) -> String {
    format!("branch{k}_trajectory.csv")
}

fn create(path: &Path) -> Result<BufWriter<File>, CliError> {
    File::create(path).map(BufWriter::new).map_err(io_err(path))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value)
        .map_err(|e| io_err(path)(io::Error::other(e)))?;
    writeln!(w).and_then(|_| w.flush()).map_err(io_err(path))
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(io_err(path))
}

/// Runs [`solve_problem`] and writes `summary.json`, one trajectory CSV per
/// branch and, with `emit_plots`, the xi and reconstruction-error charts.
pub fn cmd_solve(cfg: &RunConfig) -> Result<SolveOutcome, CliError> {
    let outcome = solve_problem(cfg)?;
    let dir = &cfg.output_dir;
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    for (k, traj) in &outcome.trajectories {
        let recon = reconstruct_error(&outcome.problem, traj).map_err(CliError::numerical)?;
        let path = dir.join(trajectory_file(*k));
        let mut w = create(&path)?;
        write_trajectory_csv(&mut w, &recon, &traj.guard_bands)
            .and_then(|_| w.flush())
            .map_err(io_err(&path))?;
        if cfg.emit_plots {
            let xi: Vec<(f64, f64)> = traj.samples.iter().map(|s| (s.x, s.xi)).collect();
            let svg = line_chart_svg(
                &format!("Rolle function, branch {k}"),
                "x",
                "xi(x)",
                &split_at_bands(&xi, &traj.guard_bands),
                Scale::Linear,
            );
            write_text(&dir.join(format!("branch{k}_xi.svg")), &svg)?;
            let diff: Vec<(f64, f64)> = recon.rows.iter().map(|r| (r.x, r.abs_diff)).collect();
            let svg = line_chart_svg(
                &format!("Reconstructed minus true error, branch {k}"),
                "x",
                "|diff|",
                &split_at_bands(&diff, &traj.guard_bands),
                Scale::Log10,
            );
            write_text(&dir.join(format!("branch{k}_diff.svg")), &svg)?;
        }
    }
    write_json(&dir.join("summary.json"), &outcome.summary)?;
    Ok(outcome)
}

#[derive(Debug, Clone, Serialize)]
pub struct CorrectionEntry {
    /// `None` when the Rolle term is constant and no branch exists.
    pub branch: Option<usize>,
    pub seed: Option<RolleSeed>,
    pub p_xi_degree: Option<usize>,
    pub corrected_degree: Option<usize>,
    #[serde(flatten)]
    pub result: CorrectionResult,
    pub errors_csv: String,
}

/// Contents of `correction.json`.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectionReport {
    pub function: String,
    pub nodes: Vec<f64>,
    pub interpolant: Polynomial,
    pub fit_degree: usize,
    pub corrections: Vec<CorrectionEntry>,
}

/// Solves, then fits and assembles the corrected polynomial for each
/// selected branch. A constant Rolle term skips the ODE and uses a degree-0
/// fit.
pub fn cmd_correct(cfg: &RunConfig) -> Result<CorrectionReport, CliError> {
    let prob = cfg.problem()?;
    let dir = cfg.output_dir.clone();
    let mut fitted: Vec<(Option<usize>, Option<RolleSeed>, CorrectionResult)> = Vec::new();
    if prob.constant_rolle_term().is_some() {
        fitted.push((None, None, build_constant_correction(&prob)?));
    } else {
        let outcome = cmd_solve(cfg)?;
        for (k, traj) in &outcome.trajectories {
            let res = build_correction(&outcome.problem, traj, cfg.fit_degree)?;
            fitted.push((Some(*k), Some(traj.seed), res));
        }
    }
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;

    let mut corrections = Vec::new();
    for (branch, seed, result) in fitted {
        let stem = match branch {
            Some(k) => format!("branch{k}_errors"),
            None => "errors".to_owned(),
        };
        let rows = error_table(&prob, &result.corrected, ERROR_GRID_POINTS)?;
        let path = dir.join(format!("{stem}.csv"));
        let mut w = create(&path)?;
        write_error_csv(&mut w, &rows)
            .and_then(|_| w.flush())
            .map_err(io_err(&path))?;
        if cfg.emit_plots {
            for (name, pick) in [("before", 1usize), ("after", 2)] {
                let pts: Vec<(f64, f64)> = rows
                    .iter()
                    .map(|r| (r.0, if pick == 1 { r.1.abs() } else { r.2.abs() }))
                    .collect();
                let svg = line_chart_svg(
                    &format!("|f - approximation| {name} correction"),
                    "x",
                    "abs error",
                    &[pts],
                    Scale::Log10,
                );
                write_text(&dir.join(format!("{stem}_{name}.svg")), &svg)?;
            }
        }
        corrections.push(CorrectionEntry {
            branch,
            seed,
            p_xi_degree: result.p_xi.degree(),
            corrected_degree: result.corrected.degree(),
            result,
            errors_csv: format!("{stem}.csv"),
        });
    }
    let report = CorrectionReport {
        function: cfg.function_text.clone(),
        nodes: cfg.nodes.clone(),
        interpolant: prob.interpolant().clone(),
        fit_degree: cfg.fit_degree,
        corrections,
    };
    write_json(&dir.join("correction.json"), &report)?;
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReproduceTarget {
    Example1,
    Example2,
    Application,
}

impl FromStr for ReproduceTarget {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "example1" => Ok(ReproduceTarget::Example1),
            "example2" => Ok(ReproduceTarget::Example2),
            "application" => Ok(ReproduceTarget::Application),
            other => Err(CliError::Config(format!(
                "unknown target `{other}` (expected example1, example2 or application)"
            ))),
        }
    }
}

/// One reproduced number and its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub expected: String,
    pub passed: bool,
}

impl Check {
    fn near(name: &str, value: f64, target: f64, tol: f64) -> Check {
        Check {
            name: name.to_owned(),
            value,
            expected: format!("{target} ± {tol:e}"),
            passed: (value - target).abs() <= tol,
        }
    }

    fn at_most(name: &str, value: f64, bound: f64) -> Check {
        Check {
            name: name.to_owned(),
            value,
            expected: format!("<= {bound:e}"),
            passed: value <= bound,
        }
    }

    fn at_least(name: &str, value: f64, bound: f64) -> Check {
        Check {
            name: name.to_owned(),
            value,
            expected: format!(">= {bound:e}"),
            passed: value >= bound,
        }
    }
}

pub fn example1_config() -> RunConfig {
    RunConfig::new("exp(x)*sin(x)", vec![0.0, 1.5 * std::f64::consts::PI])
}

pub fn example2_config() -> RunConfig {
    RunConfig::new("exp(x)*sin(x)", vec![0.0, 2.0, 1.5 * std::f64::consts::PI])
}

/// Runs the canonical configuration for `target` in memory and checks the
/// reference values.
pub fn reproduce_checks(target: ReproduceTarget) -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    match target {
        ReproduceTarget::Example1 => {
            let out = solve_problem(&example1_config())?;
            let s = &out.summary;
            checks.push(Check::near("seed count", s.seeds.len() as f64, 2.0, 0.0));
            for (i, want) in [2.1931, 4.6631].into_iter().enumerate() {
                let got = s.seeds.get(i).map_or(f64::NAN, |seed| seed.xi_z);
                checks.push(Check::near(&format!("seed {}", i + 1), got, want, 1e-3));
            }
            for b in &s.branches {
                checks.push(Check::at_most(
                    &format!("branch {} max |reconstructed - true|", b.branch),
                    b.max_reconstruction_diff,
                    1e-9,
                ));
            }
        }
        ReproduceTarget::Example2 => {
            let out = solve_problem(&example2_config())?;
            let s = &out.summary;
            let c = s.interpolant.coeffs();
            checks.push(Check::near("a (x^2 coefficient)", c.get(2).copied().unwrap_or(f64::NAN), -9.9476, 1e-3));
            checks.push(Check::near("b (x coefficient)", c.get(1).copied().unwrap_or(f64::NAN), 23.2546, 1e-3));
            checks.push(Check::near("c (constant)", c[0], 0.0, 1e-3));
            checks.push(Check::near("seed count", s.seeds.len() as f64, 2.0, 0.0));
            for (i, want) in [1.7845, 3.8165].into_iter().enumerate() {
                let got = s.seeds.get(i).map_or(f64::NAN, |seed| seed.xi_z);
                checks.push(Check::near(&format!("seed {}", i + 1), got, want, 1e-3));
            }
            for (b, want) in s.branches.iter().zip([2.0991, 3.7381]) {
                let got = b.implied_rolle.first().map_or(f64::NAN, |r| r.xi);
                checks.push(Check::near(&format!("branch {} implied xi(2)", b.branch), got, want, 5e-3));
                checks.push(Check::at_most(
                    &format!("branch {} max |reconstructed - true|", b.branch),
                    b.max_reconstruction_diff,
                    1e-9,
                ));
            }
        }
        ReproduceTarget::Application => {
            let mut cfg = example1_config();
            cfg.branch = BranchSelection::One(1);
            let out = solve_problem(&cfg)?;
            let (_, traj) = &out.trajectories[0];
            let res = build_correction(&out.problem, traj, DEFAULT_FIT_DEGREE)?;
            checks.push(Check::near("corrected degree", res.corrected.degree().map_or(f64::NAN, |d| d as f64), 8.0, 0.0));
            checks.push(Check::near("max |f - P_1|", res.max_err_before, 75.0, 2.0));
            checks.push(Check::at_most("max |f - corrected|", res.max_err_after, 1e-2));
            checks.push(Check::at_least("improvement factor", res.improvement_factor, 5e3));
        }
    }
    Ok(checks)
}

/// Prints a PASS/FAIL table for `target`; returns the exit code.
pub fn cmd_reproduce<W: Write>(target: ReproduceTarget, mut out: W) -> Result<i32, CliError> {
    let checks = reproduce_checks(target)?;
    let stdout_err = |e| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    };
    for c in &checks {
        writeln!(
            out,
            "{}  {:<40} {:>24e}  expected {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.value,
            c.expected
        )
        .map_err(stdout_err)?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "{} checks, {} failed", checks.len(), failed).map_err(stdout_err)?;
    Ok(if failed == 0 { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_selection_parsing() {
        assert_eq!("all".parse::<BranchSelection>().unwrap(), BranchSelection::All);
        assert_eq!("2".parse::<BranchSelection>().unwrap(), BranchSelection::One(2));
        assert!("0".parse::<BranchSelection>().is_err());
        assert!("two".parse::<BranchSelection>().is_err());
    }

    #[test]
    fn node_lists() {
        assert_eq!(parse_node_list("0, 2,4.5").unwrap(), vec![0.0, 2.0, 4.5]);
        assert!(parse_node_list("0,,1").is_err());
        let v = parse_node_exprs("0,3*pi/2").unwrap();
        assert_eq!(v[1], 3.0 * std::f64::consts::PI / 2.0);
        assert!(parse_node_exprs("x").is_err());
    }

    #[test]
    fn validation_codes() {
        let mut cfg = RunConfig::new("exp(x)", vec![0.0]);
        assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
        cfg.nodes = vec![0.0, 1.0, 1.0];
        assert_eq!(cfg.validate().unwrap_err().exit_code(), 2);
        cfg.nodes = vec![0.0, 1.0];
        cfg.x_z = 1.0;
        assert!(cfg.validate().is_err());
        cfg.x_z = 0.5;
        cfg.step = -1.0;
        assert!(cfg.validate().is_err());
        cfg.step = 1e-3;
        assert!(cfg.validate().is_ok());
        cfg.function_text = "exp(".into();
        assert_eq!(cfg.problem().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn degenerate_report_carries_formula() {
        let err = solve_problem(&RunConfig::new("x^2", vec![0.0, 1.0])).err().unwrap();
        assert_eq!(err.exit_code(), 3);
        let j = err.to_json();
        assert_eq!(j["error"], "degenerate_constant_derivative");
        assert_eq!(j["details"]["rolle_term"], 2.0);
        assert_eq!(j["details"]["remainder"], json!([0.0, -1.0, 1.0]));
        assert!(j["details"]["delta_formula"].as_str().unwrap().contains("2 / 2!"));
    }

    #[test]
    fn missing_branch_is_a_config_error() {
        let mut cfg = example1_config();
        cfg.step = 1e-2;
        cfg.branch = BranchSelection::One(3);
        assert_eq!(solve_problem(&cfg).err().unwrap().exit_code(), 2);
    }
}
