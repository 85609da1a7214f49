//! Recovering the Rolle function of Lagrange interpolation and using it to
//! correct the interpolant.
//!
//! For an interpolant `P_n` of `f` on nodes `x_0 < ... < x_n` the remainder is
//! `f(x) - P_n(x) = f^(n+1)(xi(x)) pi(x) / (n+1)!`. This crate finds `xi(x)`
//! by integrating the ODE obtained from differentiating that identity
//! ([`rolle`]), then fits a polynomial to `f^(n+1)(xi(x))` to build a
//! higher-degree approximation ([`correct`]).
//!
//! ```no_run
//! use rollekit::rolle::{self, InterpolationProblem, TrajectoryOptions};
//!
//! let prob = InterpolationProblem::from_text(
//!     "exp(x)*sin(x)",
//!     vec![0.0, 1.5 * std::f64::consts::PI],
//! )?;
//! let seeds = rolle::seed_scan(&prob, 1e-5, 2000)?;
//! let traj = rolle::solve_trajectory(&prob, &seeds[0], 5e-5, &TrajectoryOptions::default())?;
//! let fit = rollekit::correct::build_correction(&prob, &traj, 6)?;
//! println!("{:.3e} -> {:.3e}", fit.max_err_before, fit.max_err_after);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod correct;
pub mod expr;
pub mod io;
pub mod ode;
pub mod poly;
pub mod rolle;
pub mod roots;

pub use correct::{build_correction, CorrectionResult};
pub use expr::{parse, Expression};
pub use poly::{NodeSet, Polynomial};
pub use rolle::{InterpolationProblem, RolleSeed, RolleTrajectory};
