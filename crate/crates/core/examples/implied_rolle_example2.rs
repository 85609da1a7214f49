//! Quadratic interpolation of e^x sin x through 0, 2 and 3pi/2. The Rolle
//! ODE is singular at the interior node, so the trajectory steps over a
//! small band around x = 2; the value there is read off from both sides.

use std::f64::consts::PI;

use rollekit::rolle::{implied_rolle, seed_scan, solve_trajectory, TrajectoryOptions};
use rollekit::InterpolationProblem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prob = InterpolationProblem::from_text("exp(x)*sin(x)", vec![0.0, 2.0, 1.5 * PI])?;
    let c = prob.interpolant().coeffs();
    println!("P_2(x) = {:.4} x^2 + {:.4} x", c[2], c[1]);

    for seed in seed_scan(&prob, 1e-5, 2000)? {
        let traj = solve_trajectory(&prob, &seed, 5e-5, &TrajectoryOptions::default())?;
        let band = traj.guard_bands[0];
        println!(
            "seed {:.4}: skipped ({:.4}, {:.4}), implied xi(2) = {:.4}",
            seed.xi_z,
            band.lo,
            band.hi,
            implied_rolle(&traj, 2.0)?
        );
    }
    Ok(())
}
