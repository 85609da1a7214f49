//! Recovery of the Rolle function `xi(x)` in the Lagrange remainder
//!
//! ```text
//! f(x) - P_n(x) = f^(n+1)(xi(x)) / (n+1)! * pi(x),    pi(x) = prod (x - x_k)
//! ```
//!
//! Differentiating the remainder identity in `x` gives a first-order ODE for
//! `xi`. A seed `(x_z, xi_z)` is found by root-finding the identity at a
//! non-node abscissa, then the ODE is integrated with fixed-step RK4 in both
//! directions. Nodes are singular points of the ODE (`pi = 0`), so each node
//! is surrounded by a guard band the integrator never enters; the solution is
//! carried across by linear extrapolation and re-anchored on the far side by
//! solving the identity directly.

use serde::Serialize;
use thiserror::Error;

use crate::expr::{ExprError, Expression};
use crate::ode::rk4_step;
use crate::poly::{lagrange_interpolate, node_polynomial, NodeSet, PolyError, Polynomial};
use crate::roots::{find_all_roots, ScanOptions};

pub const DEFAULT_SEED_ABSCISSA: f64 = 1e-5;
pub const DEFAULT_STEP: f64 = 5e-5;
pub const DEFAULT_SEED_TOL: f64 = 1e-12;
pub const ORACLE_GRID: usize = 2000;
pub const DENOM_FLOOR: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RolleError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("x = {x} lies outside the open node interval ({lo}, {hi})")]
    OutsideInterval { x: f64, lo: f64, hi: f64 },
    #[error("x = {x} is an interpolation node; the remainder does not constrain xi there")]
    AtNode { x: f64 },
    #[error("grid of {grid_count} points is too coarse (need at least 100)")]
    GridTooCoarse { grid_count: usize },
    #[error("no Rolle number found in the node interval for x = {x}")]
    NoRoot { x: f64 },
    #[error("the (n+1)th derivative is the constant {value}; xi is arbitrary")]
    DegenerateConstant { value: f64 },
    #[error("node polynomial vanishes at x = {x}")]
    SingularNode { x: f64 },
    #[error("the (n+2)th derivative vanishes at xi = {xi} (x = {x})")]
    SingularDerivative { x: f64, xi: f64 },
    #[error("lost the branch at x = {x}: expected xi near {expected}, nearest root {nearest:?}")]
    BranchLoss {
        x: f64,
        expected: f64,
        nearest: Option<f64>,
    },
    #[error("xi = {xi} left the node interval at x = {x}")]
    Escape { x: f64, xi: f64 },
    #[error("step size must be positive and finite, got {step}")]
    InvalidStep { step: f64 },
    #[error("seed abscissa {x} lies inside the guard band of node {node}")]
    SeedInGuardBand { x: f64, node: f64 },
    #[error("guard bands around nodes {left} and {right} overlap")]
    GuardOverlap { left: f64, right: f64 },
    #[error("{node} is not an interior node of this trajectory")]
    NotInteriorNode { node: f64 },
    #[error("trajectory has no samples within reach on both sides of node {node}")]
    InsufficientBracket { node: f64 },
    #[error("trajectory needs at least two samples, got {count}")]
    InsufficientSamples { count: usize },
}

/// A function, its nodes and every derived object the remainder needs.
#[derive(Debug, Clone)]
pub struct InterpolationProblem {
    f: Expression,
    nodes: NodeSet,
    p_n: Polynomial,
    p_n_prime: Polynomial,
    pi: Polynomial,
    pi_prime: Polynomial,
    f_prime: Expression,
    f_np1: Expression,
    f_np2: Expression,
    factorial: f64,
    constant_term: Option<f64>,
    node_scale: f64,
}

impl InterpolationProblem {
    pub fn new(f: Expression, nodes: NodeSet) -> Result<Self, RolleError> {
        let n = nodes.degree();
        let p_n = lagrange_interpolate(&f, &nodes)?;
        let p_n_prime = p_n.derivative();
        let (pi, pi_prime) = node_polynomial(&nodes);
        let f_prime = f.derivative(1);
        let f_np1 = f_prime.derivative(n);
        let f_np2 = f_np1.derivative(1);
        let factorial = (1..=n + 1).map(|k| k as f64).product();
        let constant_term = f_np1.as_constant();
        let span = nodes.last() - nodes.first();
        let node_scale = span.powi(n as i32 + 1).max(1.0);
        Ok(InterpolationProblem {
            f,
            nodes,
            p_n,
            p_n_prime,
            pi,
            pi_prime,
            f_prime,
            f_np1,
            f_np2,
            factorial,
            constant_term,
            node_scale,
        })
    }

    /// Parses `function` and builds the problem on `nodes`.
    pub fn from_text(function: &str, nodes: Vec<f64>) -> Result<Self, RolleError> {
        let f = crate::expr::parse(function)?;
        Self::new(f, NodeSet::new(nodes)?)
    }

    pub fn f(&self) -> &Expression {
        &self.f
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    /// Interpolation degree `n`.
    pub fn degree(&self) -> usize {
        self.nodes.degree()
    }

    pub fn interpolant(&self) -> &Polynomial {
        &self.p_n
    }

    pub fn interpolant_derivative(&self) -> &Polynomial {
        &self.p_n_prime
    }

    pub fn node_poly(&self) -> &Polynomial {
        &self.pi
    }

    pub fn node_poly_derivative(&self) -> &Polynomial {
        &self.pi_prime
    }

    pub fn f_prime(&self) -> &Expression {
        &self.f_prime
    }

    /// `f^(n+1)`
    pub fn rolle_derivative(&self) -> &Expression {
        &self.f_np1
    }

    /// `f^(n+2)`
    pub fn rolle_derivative_next(&self) -> &Expression {
        &self.f_np2
    }

    /// `(n+1)!`
    pub fn factorial(&self) -> f64 {
        self.factorial
    }

    /// `Some(c)` when `f^(n+1)` simplifies to the constant `c`.
    pub fn constant_rolle_term(&self) -> Option<f64> {
        self.constant_term
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.nodes.first(), self.nodes.last())
    }

    /// `f(x) - P_n(x)`
    pub fn error_at(&self, x: f64) -> Result<f64, RolleError> {
        Ok(self.f.eval(x)? - self.p_n.eval(x))
    }

    /// The value `f^(n+1)(xi)` must take at `x`: `(n+1)! (f - P_n)(x) / pi(x)`.
    pub fn rolle_target(&self, x: f64) -> Result<f64, RolleError> {
        let pi = self.pi.eval(x);
        if pi.abs() <= f64::MIN_POSITIVE {
            return Err(RolleError::SingularNode { x });
        }
        Ok(self.factorial * self.error_at(x)? / pi)
    }

    /// `|(n+1)! (f(x) - P_n(x)) - f^(n+1)(xi) pi(x)|`
    pub fn identity_residual(&self, x: f64, xi: f64) -> Result<f64, RolleError> {
        Ok((self.factorial * self.error_at(x)? - self.f_np1.eval(xi)? * self.pi.eval(x)).abs())
    }

    /// Identity residual divided by `(n+1)! (1 + |f(x)|)`.
    pub fn normalized_residual(&self, x: f64, xi: f64) -> Result<f64, RolleError> {
        let fx = self.f.eval(x)?;
        Ok(self.identity_residual(x, xi)? / (self.factorial * (1.0 + fx.abs())))
    }

    /// Remainder rebuilt from a Rolle number: `f^(n+1)(xi) pi(x) / (n+1)!`.
    pub fn reconstructed_error(&self, x: f64, xi: f64) -> Result<f64, RolleError> {
        Ok(self.f_np1.eval(xi)? * self.pi.eval(x) / self.factorial)
    }

    fn check_abscissa(&self, x: f64) -> Result<(), RolleError> {
        let (lo, hi) = self.interval();
        if !(x > lo && x < hi) {
            return Err(RolleError::OutsideInterval { x, lo, hi });
        }
        if self.nodes.contains(x) || self.pi.eval(x).abs() <= f64::MIN_POSITIVE {
            return Err(RolleError::AtNode { x });
        }
        Ok(())
    }

    /// All Rolle numbers at `x` found on a `grid_count`-point scan.
    fn rolle_roots(&self, x: f64, grid_count: usize) -> Result<Vec<f64>, RolleError> {
        if let Some(value) = self.constant_term {
            return Err(RolleError::DegenerateConstant { value });
        }
        self.check_abscissa(x)?;
        let target = self.rolle_target(x)?;
        let (lo, hi) = self.interval();
        let opts = ScanOptions {
            grid_count,
            ..ScanOptions::default()
        };
        let roots = find_all_roots(
            |xi| Ok::<_, RolleError>(self.f_np1.eval(xi)? - target),
            |xi| Ok(self.f_np2.eval(xi)?),
            lo,
            hi,
            &opts,
        )?;
        if roots.is_empty() {
            return Err(RolleError::NoRoot { x });
        }
        Ok(roots)
    }

    /// One Newton correction of `xi` towards the identity at `x`.
    fn newton_correct(&self, x: f64, xi: f64) -> Result<f64, RolleError> {
        let slope = self.f_np2.eval(xi)?;
        if slope.abs() <= DENOM_FLOOR {
            return Ok(xi);
        }
        Ok(xi - (self.f_np1.eval(xi)? - self.rolle_target(x)?) / slope)
    }
}

/// `f(x) - P_n(x)`
pub fn error_at(prob: &InterpolationProblem, x: f64) -> Result<f64, RolleError> {
    prob.error_at(x)
}

/// Initial condition for the Rolle ODE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RolleSeed {
    pub x_z: f64,
    pub xi_z: f64,
    /// Normalized identity residual at acceptance.
    pub residual: f64,
}

/// Every Rolle number at `x_z`, each polished to `DEFAULT_SEED_TOL`.
pub fn seed_scan(
    prob: &InterpolationProblem,
    x_z: f64,
    grid_count: usize,
) -> Result<Vec<RolleSeed>, RolleError> {
    seed_scan_with_tol(prob, x_z, grid_count, DEFAULT_SEED_TOL)
}

pub fn seed_scan_with_tol(
    prob: &InterpolationProblem,
    x_z: f64,
    grid_count: usize,
    seed_tol: f64,
) -> Result<Vec<RolleSeed>, RolleError> {
    if grid_count < 100 {
        return Err(RolleError::GridTooCoarse { grid_count });
    }
    let mut seeds = Vec::new();
    for xi_z in prob.rolle_roots(x_z, grid_count)? {
        let residual = prob.normalized_residual(x_z, xi_z)?;
        if residual <= seed_tol {
            seeds.push(RolleSeed {
                x_z,
                xi_z,
                residual,
            });
        }
    }
    if seeds.is_empty() {
        return Err(RolleError::NoRoot { x: x_z });
    }
    Ok(seeds)
}

/// Right-hand side of the Rolle ODE,
///
/// ```text
/// dxi/dx = [(n+1)! (f'(x) - P_n'(x)) - f^(n+1)(xi) pi'(x)] / [pi(x) f^(n+2)(xi)]
/// ```
pub fn ode_rhs(prob: &InterpolationProblem, x: f64, xi: f64) -> Result<f64, RolleError> {
    let pi = prob.pi.eval(x);
    if pi.abs() <= DENOM_FLOOR * prob.node_scale {
        return Err(RolleError::SingularNode { x });
    }
    let d2 = prob.f_np2.eval(xi)?;
    if d2.abs() <= DENOM_FLOOR {
        return Err(RolleError::SingularDerivative { x, xi });
    }
    let num = prob.factorial * (prob.f_prime.eval(x)? - prob.p_n_prime.eval(x))
        - prob.f_np1.eval(xi)? * prob.pi_prime.eval(x);
    Ok(num / (pi * d2))
}

/// Every Rolle number at `x` from a dense scan of the identity, independent
/// of the ODE. With `near`, only the root closest to it.
pub fn pointwise_xi(
    prob: &InterpolationProblem,
    x: f64,
    near: Option<f64>,
) -> Result<Vec<f64>, RolleError> {
    let roots = prob.rolle_roots(x, ORACLE_GRID)?;
    Ok(match near {
        None => roots,
        Some(target) => vec![nearest(&roots, target).expect("roots are non-empty")],
    })
}

fn nearest(values: &[f64], target: f64) -> Option<f64> {
    values
        .iter()
        .copied()
        .min_by(|a, b| (a - target).abs().total_cmp(&(b - target).abs()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryOptions {
    /// Half-width of the excluded band around each interior node.
    pub node_guard: f64,
    /// Distance kept from `x_0` and `x_n`.
    pub end_margin: f64,
    /// One Newton projection onto the identity after every RK4 step.
    pub polish: bool,
    /// Largest accepted jump between an extrapolated and a re-anchored xi.
    pub branch_jump_tol: f64,
}

impl Default for TrajectoryOptions {
    fn default() -> Self {
        TrajectoryOptions {
            node_guard: 1e-3,
            end_margin: 1e-5,
            polish: false,
            branch_jump_tol: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GuardBand {
    pub node: f64,
    pub lo: f64,
    pub hi: f64,
}

/// How the trajectory was carried across an interior node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rebridge {
    pub node: f64,
    pub x_left: f64,
    pub xi_left: f64,
    pub x_right: f64,
    pub xi_right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectorySample {
    pub x: f64,
    pub xi: f64,
}

/// One branch of the Rolle function sampled on the RK4 grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RolleTrajectory {
    pub seed: RolleSeed,
    /// Sorted by `x`, strictly increasing.
    pub samples: Vec<TrajectorySample>,
    pub step_size: f64,
    /// `(x_0, x_n)`
    pub interval: (f64, f64),
    pub guard_bands: Vec<GuardBand>,
    pub rebridges: Vec<Rebridge>,
    /// Steps where the ODE broke down and xi was re-anchored pointwise.
    pub fallbacks: usize,
    /// Largest normalized identity residual over all samples.
    pub max_residual: f64,
}

impl RolleTrajectory {
    /// Linear interpolation of xi between samples; `None` outside the sampled
    /// range or inside a guard band.
    pub fn xi_at(&self, x: f64) -> Option<f64> {
        if self
            .guard_bands
            .iter()
            .any(|band| x > band.lo && x < band.hi)
        {
            return None;
        }
        let idx = self.samples.partition_point(|s| s.x < x);
        if idx < self.samples.len() && self.samples[idx].x == x {
            return Some(self.samples[idx].xi);
        }
        if idx == 0 || idx == self.samples.len() {
            return None;
        }
        let (a, b) = (self.samples[idx - 1], self.samples[idx]);
        Some(a.xi + (b.xi - a.xi) * (x - a.x) / (b.x - a.x))
    }

    pub fn first_x(&self) -> f64 {
        self.samples[0].x
    }

    pub fn last_x(&self) -> f64 {
        self.samples[self.samples.len() - 1].x
    }
}

/// Integrates the Rolle ODE from `seed` across the whole node interval.
pub fn solve_trajectory(
    prob: &InterpolationProblem,
    seed: &RolleSeed,
    step: f64,
    opts: &TrajectoryOptions,
) -> Result<RolleTrajectory, RolleError> {
    solve_trajectory_with_field(prob, seed, step, opts, |x, xi| ode_rhs(prob, x, xi))
}

/// [`solve_trajectory`] with the right-hand side supplied by the caller.
pub fn solve_trajectory_with_field<F>(
    prob: &InterpolationProblem,
    seed: &RolleSeed,
    step: f64,
    opts: &TrajectoryOptions,
    mut field: F,
) -> Result<RolleTrajectory, RolleError>
where
    F: FnMut(f64, f64) -> Result<f64, RolleError>,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(RolleError::InvalidStep { step });
    }
    if let Some(value) = prob.constant_term {
        return Err(RolleError::DegenerateConstant { value });
    }
    prob.check_abscissa(seed.x_z)?;

    let (x0, xn) = prob.interval();
    let guard = opts.node_guard;
    let mut guard_bands = Vec::new();
    let mut segments = Vec::new();
    let mut start = (x0 + opts.end_margin).min(seed.x_z);
    for &node in prob.nodes.interior() {
        guard_bands.push(GuardBand {
            node,
            lo: node - guard,
            hi: node + guard,
        });
        if node - guard <= start {
            return Err(RolleError::GuardOverlap {
                left: start,
                right: node,
            });
        }
        segments.push((start, node - guard));
        start = node + guard;
    }
    let end = (xn - opts.end_margin).max(seed.x_z);
    if end <= start {
        return Err(RolleError::GuardOverlap {
            left: start,
            right: xn,
        });
    }
    segments.push((start, end));

    let home = segments
        .iter()
        .position(|&(a, b)| seed.x_z >= a && seed.x_z <= b)
        .ok_or_else(|| {
            let band = guard_bands
                .iter()
                .find(|band| seed.x_z > band.lo && seed.x_z < band.hi)
                .expect("an abscissa outside every segment lies in a guard band");
            RolleError::SeedInGuardBand {
                x: seed.x_z,
                node: band.node,
            }
        })?;

    let mut walker = Walker {
        prob,
        opts,
        step,
        field: &mut field,
        fallbacks: 0,
        rebridges: Vec::new(),
    };

    let mut right = vec![(seed.x_z, seed.xi_z)];
    walker.integrate(&mut right, segments[home].1)?;
    for (k, seg) in segments.iter().enumerate().skip(home + 1) {
        walker.cross(&mut right, guard_bands[k - 1].node, seg.0)?;
        walker.integrate(&mut right, seg.1)?;
    }

    let mut left = vec![(seed.x_z, seed.xi_z)];
    walker.integrate(&mut left, segments[home].0)?;
    for k in (0..home).rev() {
        walker.cross(&mut left, guard_bands[k].node, segments[k].1)?;
        walker.integrate(&mut left, segments[k].0)?;
    }

    let fallbacks = walker.fallbacks;
    let mut rebridges = walker.rebridges;
    rebridges.sort_by(|a, b| a.node.total_cmp(&b.node));

    let samples: Vec<TrajectorySample> = left
        .iter()
        .skip(1)
        .rev()
        .chain(right.iter())
        .map(|&(x, xi)| TrajectorySample { x, xi })
        .collect();
    debug_assert!(samples.windows(2).all(|w| w[0].x < w[1].x));

    let mut max_residual: f64 = 0.0;
    for s in &samples {
        max_residual = max_residual.max(prob.normalized_residual(s.x, s.xi)?);
    }

    Ok(RolleTrajectory {
        seed: *seed,
        samples,
        step_size: step,
        interval: (x0, xn),
        guard_bands,
        rebridges,
        fallbacks,
        max_residual,
    })
}

struct Walker<'a, F> {
    prob: &'a InterpolationProblem,
    opts: &'a TrajectoryOptions,
    step: f64,
    field: &'a mut F,
    fallbacks: usize,
    rebridges: Vec<Rebridge>,
}

impl<F> Walker<'_, F>
where
    F: FnMut(f64, f64) -> Result<f64, RolleError>,
{
    /// Extends `path` from its last point to `target` on an equally spaced
    /// grid with spacing at most `step`.
    fn integrate(&mut self, path: &mut Vec<(f64, f64)>, target: f64) -> Result<(), RolleError> {
        let (x_start, _) = *path.last().expect("path starts at the seed");
        let length = target - x_start;
        if length == 0.0 {
            return Ok(());
        }
        let n = (length.abs() / self.step).ceil().max(1.0) as usize;
        let h = length / n as f64;
        path.reserve(n);
        for i in 1..=n {
            let (x, xi) = *path.last().unwrap();
            let x_next = if i == n { target } else { x_start + i as f64 * h };
            let mut xi_next = match rk4_step(self.field, x, xi, x_next - x) {
                Ok(v) => v,
                Err(RolleError::SingularDerivative { .. }) => {
                    self.fallbacks += 1;
                    self.reanchor(x_next, xi)?
                }
                Err(e) => return Err(e),
            };
            if self.opts.polish {
                xi_next = self.prob.newton_correct(x_next, xi_next)?;
            }
            self.check_range(x_next, xi_next)?;
            path.push((x_next, xi_next));
        }
        Ok(())
    }

    /// Jumps the guard band of `node`, landing at `x_far`.
    fn cross(
        &mut self,
        path: &mut Vec<(f64, f64)>,
        node: f64,
        x_far: f64,
    ) -> Result<(), RolleError> {
        let (x_near, xi_near) = *path.last().unwrap();
        let slope = if path.len() >= 2 {
            let (xp, xip) = path[path.len() - 2];
            (xi_near - xip) / (x_near - xp)
        } else {
            (self.field)(x_near, xi_near).unwrap_or(0.0)
        };
        let expected = xi_near + slope * (x_far - x_near);
        let xi_far = self.reanchor(x_far, expected)?;
        self.check_range(x_far, xi_far)?;
        let (x_left, xi_left, x_right, xi_right) = if x_far > x_near {
            (x_near, xi_near, x_far, xi_far)
        } else {
            (x_far, xi_far, x_near, xi_near)
        };
        self.rebridges.push(Rebridge {
            node,
            x_left,
            xi_left,
            x_right,
            xi_right,
        });
        path.push((x_far, xi_far));
        Ok(())
    }

    fn reanchor(&self, x: f64, expected: f64) -> Result<f64, RolleError> {
        let roots = match self.prob.rolle_roots(x, ORACLE_GRID) {
            Ok(r) => r,
            Err(RolleError::NoRoot { .. }) => Vec::new(),
            Err(e) => return Err(e),
        };
        let found = nearest(&roots, expected);
        match found {
            Some(xi) if (xi - expected).abs() <= self.opts.branch_jump_tol => Ok(xi),
            _ => Err(RolleError::BranchLoss {
                x,
                expected,
                nearest: found,
            }),
        }
    }

    fn check_range(&self, x: f64, xi: f64) -> Result<(), RolleError> {
        let (lo, hi) = self.prob.interval();
        if xi > lo && xi < hi {
            Ok(())
        } else {
            Err(RolleError::Escape { x, xi })
        }
    }
}

/// Value assigned to xi at an interior node by linear interpolation across
/// its guard band.
pub fn implied_rolle(traj: &RolleTrajectory, node: f64) -> Result<f64, RolleError> {
    let band = traj
        .guard_bands
        .iter()
        .find(|band| band.node == node)
        .ok_or(RolleError::NotInteriorNode { node })?;
    let reach = (band.node - band.lo).max(band.hi - band.node) + 10.0 * traj.step_size;
    let idx = traj.samples.partition_point(|s| s.x < node);
    if idx == 0 || idx == traj.samples.len() {
        return Err(RolleError::InsufficientBracket { node });
    }
    let (a, b) = (traj.samples[idx - 1], traj.samples[idx]);
    if node - a.x > reach || b.x - node > reach {
        return Err(RolleError::InsufficientBracket { node });
    }
    Ok(a.xi + (b.xi - a.xi) * (node - a.x) / (b.x - a.x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    Left,
    Right,
}

/// Linear extrapolation of the two outermost samples to `x_0` or `x_n`.
pub fn endpoint_rolle(traj: &RolleTrajectory, which: Endpoint) -> Result<f64, RolleError> {
    let count = traj.samples.len();
    if count < 2 {
        return Err(RolleError::InsufficientSamples { count });
    }
    let (a, b, at) = match which {
        Endpoint::Left => (traj.samples[0], traj.samples[1], traj.interval.0),
        Endpoint::Right => (traj.samples[count - 2], traj.samples[count - 1], traj.interval.1),
    };
    Ok(a.xi + (b.xi - a.xi) * (at - a.x) / (b.x - a.x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionRow {
    pub x: f64,
    pub xi: f64,
    pub delta_reconstructed: f64,
    pub delta_true: f64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Reconstruction {
    pub rows: Vec<ReconstructionRow>,
    pub max_abs_diff: f64,
}

/// Compares the remainder rebuilt from the trajectory with `f - P_n`.
pub fn reconstruct_error(
    prob: &InterpolationProblem,
    traj: &RolleTrajectory,
) -> Result<Reconstruction, RolleError> {
    let mut rows = Vec::with_capacity(traj.samples.len());
    let mut max_abs_diff: f64 = 0.0;
    for s in &traj.samples {
        let delta_reconstructed = prob.reconstructed_error(s.x, s.xi)?;
        let delta_true = prob.error_at(s.x)?;
        let abs_diff = (delta_reconstructed - delta_true).abs();
        max_abs_diff = max_abs_diff.max(abs_diff);
        rows.push(ReconstructionRow {
            x: s.x,
            xi: s.xi,
            delta_reconstructed,
            delta_true,
            abs_diff,
        });
    }
    Ok(Reconstruction { rows, max_abs_diff })
}
