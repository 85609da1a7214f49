//! Polynomial correction of the interpolant from a recovered Rolle function.
//!
//! Along a trajectory the Rolle term `f^(n+1)(xi(x))` is a known function of
//! `x`. A least-squares polynomial `P_xi` fitted to it turns the remainder
//! formula into the single polynomial
//!
//! ```text
//! P_n(x) + P_xi(x) * pi(x) / (n+1)!
//! ```
//!
//! of degree `n + 1 + d`.

use serde::Serialize;
use thiserror::Error;

use crate::poly::{least_squares_fit, PolyError, Polynomial};
use crate::rolle::{InterpolationProblem, RolleError, RolleTrajectory};

/// Upper bound on the number of fit samples taken from a trajectory.
pub const MAX_FIT_SAMPLES: usize = 2000;
/// Points in the uniform grid used for max-norm error estimates.
pub const ERROR_GRID_POINTS: usize = 10_001;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorrectError {
    #[error(transparent)]
    Rolle(#[from] RolleError),
    #[error("fitting the Rolle term failed: {0}")]
    Fit(#[from] PolyError),
    #[error("the problem has a non-constant Rolle term; a trajectory is required")]
    NotDegenerate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionResult {
    pub p_xi: Polynomial,
    pub corrected: Polynomial,
    pub fit_degree: usize,
    pub samples_used: usize,
    /// `max |f - P_n|` on the error grid.
    pub max_err_before: f64,
    /// `max |f - corrected|` on the error grid.
    pub max_err_after: f64,
    pub improvement_factor: f64,
}

/// `(x, f^(n+1)(xi(x)))` along the trajectory, decimated to at most
/// [`MAX_FIT_SAMPLES`] evenly spaced samples.
pub fn rolle_term_samples(
    prob: &InterpolationProblem,
    traj: &RolleTrajectory,
) -> Result<Vec<(f64, f64)>, CorrectError> {
    let indices = decimate(traj.samples.len(), MAX_FIT_SAMPLES);
    let term = prob.rolle_derivative();
    let mut out = Vec::with_capacity(indices.len());
    for i in indices {
        let s = traj.samples[i];
        out.push((s.x, term.eval(s.xi).map_err(RolleError::from)?));
    }
    Ok(out)
}

fn decimate(len: usize, max: usize) -> Vec<usize> {
    if len <= max {
        return (0..len).collect();
    }
    let mut idx: Vec<usize> = (0..max)
        .map(|i| ((i as f64) * (len - 1) as f64 / (max - 1) as f64).round() as usize)
        .collect();
    idx.dedup();
    idx
}

/// Fits a degree-`fit_degree` polynomial to the Rolle term along `traj` and
/// assembles the corrected approximation.
///
/// A problem whose Rolle term is constant is routed to
/// [`build_constant_correction`] and the trajectory is ignored.
pub fn build_correction(
    prob: &InterpolationProblem,
    traj: &RolleTrajectory,
    fit_degree: usize,
) -> Result<CorrectionResult, CorrectError> {
    if prob.constant_rolle_term().is_some() {
        return build_constant_correction(prob);
    }
    let samples = rolle_term_samples(prob, traj)?;
    let p_xi = least_squares_fit(&samples, fit_degree)?;
    assemble(prob, p_xi, fit_degree, samples.len())
}

/// Correction for a constant Rolle term, where the remainder formula is exact
/// with any xi and a degree-0 fit suffices.
pub fn build_constant_correction(
    prob: &InterpolationProblem,
) -> Result<CorrectionResult, CorrectError> {
    let value = prob
        .constant_rolle_term()
        .ok_or(CorrectError::NotDegenerate)?;
    let (lo, hi) = prob.interval();
    let samples: Vec<(f64, f64)> = (0..MAX_FIT_SAMPLES)
        .map(|i| (lo + (hi - lo) * i as f64 / (MAX_FIT_SAMPLES - 1) as f64, value))
        .collect();
    let p_xi = least_squares_fit(&samples, 0)?;
    assemble(prob, p_xi, 0, samples.len())
}

fn assemble(
    prob: &InterpolationProblem,
    p_xi: Polynomial,
    fit_degree: usize,
    samples_used: usize,
) -> Result<CorrectionResult, CorrectError> {
    let corrected = corrected_polynomial(prob, &p_xi);
    let (mut max_err_before, mut max_err_after) = (0.0f64, 0.0f64);
    for (_, before, after) in error_table(prob, &corrected, ERROR_GRID_POINTS)? {
        max_err_before = max_err_before.max(before.abs());
        max_err_after = max_err_after.max(after.abs());
    }
    Ok(CorrectionResult {
        p_xi,
        corrected,
        fit_degree,
        samples_used,
        max_err_before,
        max_err_after,
        improvement_factor: max_err_before / max_err_after,
    })
}

/// `P_n + P_xi * pi / (n+1)!`
pub fn corrected_polynomial(prob: &InterpolationProblem, p_xi: &Polynomial) -> Polynomial {
    let remainder = (p_xi * prob.node_poly()).scale(1.0 / prob.factorial());
    prob.interpolant() + &remainder
}

/// `(x, f - P_n, f - corrected)` on `points` uniform abscissae spanning the
/// node interval, endpoints included.
pub fn error_table(
    prob: &InterpolationProblem,
    corrected: &Polynomial,
    points: usize,
) -> Result<Vec<(f64, f64, f64)>, CorrectError> {
    let (lo, hi) = prob.interval();
    let last = points.max(2) - 1;
    let mut rows = Vec::with_capacity(last + 1);
    for i in 0..=last {
        let x = if i == last {
            hi
        } else {
            lo + (hi - lo) * i as f64 / last as f64
        };
        let fx = prob.f().eval(x).map_err(RolleError::from)?;
        rows.push((x, fx - prob.interpolant().eval(x), fx - corrected.eval(x)));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_target_is_reproduced_exactly() {
        let prob = InterpolationProblem::from_text("x^2", vec![0.0, 1.0]).unwrap();
        let res = build_constant_correction(&prob).unwrap();
        assert_eq!(res.fit_degree, 0);
        let c = res.corrected.coeffs();
        assert!(c[0].abs() < 1e-12 && c[1].abs() < 1e-12 && (c[2] - 1.0).abs() < 1e-12);
        assert!(res.max_err_after <= 1e-12);
        assert!((res.p_xi.coeffs()[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn constant_path_requires_degenerate_problem() {
        let prob = InterpolationProblem::from_text("exp(x)", vec![0.0, 1.0]).unwrap();
        assert_eq!(
            build_constant_correction(&prob).unwrap_err(),
            CorrectError::NotDegenerate
        );
    }

    #[test]
    fn decimation_is_even_and_bounded() {
        assert_eq!(decimate(5, 10), vec![0, 1, 2, 3, 4]);
        let idx = decimate(94_000, 2000);
        assert_eq!(idx.len(), 2000);
        assert_eq!(idx[0], 0);
        assert_eq!(*idx.last().unwrap(), 93_999);
    }

    #[test]
    fn corrected_polynomial_matches_formula() {
        let prob = InterpolationProblem::from_text("exp(x)", vec![0.0, 0.5, 1.0]).unwrap();
        let p_xi = Polynomial::new(vec![1.0, 0.5, 0.25]);
        let corrected = corrected_polynomial(&prob, &p_xi);
        assert_eq!(corrected.degree(), Some(5));
        for x in [0.1, 0.37, 0.9] {
            let want = prob.interpolant().eval(x) + p_xi.eval(x) * prob.node_poly().eval(x) / 6.0;
            assert!((corrected.eval(x) - want).abs() < 1e-14);
        }
    }
}
