//! Replace the unknown Rolle term f''(xi(x)) by a least-squares polynomial
//! and add the resulting remainder back onto the linear interpolant.

use std::f64::consts::PI;

use rollekit::correct::error_table;
use rollekit::rolle::{seed_scan, solve_trajectory, TrajectoryOptions};
use rollekit::{build_correction, InterpolationProblem};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prob = InterpolationProblem::from_text("exp(x)*sin(x)", vec![0.0, 1.5 * PI])?;
    let seed = seed_scan(&prob, 1e-5, 2000)?[0];
    let traj = solve_trajectory(&prob, &seed, 5e-5, &TrajectoryOptions::default())?;

    for d in [0, 2, 4, 6, 8] {
        let res = build_correction(&prob, &traj, d)?;
        println!(
            "d = {d}: max |f - P_1| = {:.3}, max |f - corrected| = {:.3e}, {:.0}x better",
            res.max_err_before, res.max_err_after, res.improvement_factor
        );
    }

    let res = build_correction(&prob, &traj, 6)?;
    println!("corrected approximation: {}", res.corrected);
    for (x, before, after) in error_table(&prob, &res.corrected, 7)? {
        println!("  x = {x:.4}: {before:>10.4} -> {after:>11.3e}");
    }
    Ok(())
}
