//! Linear interpolation of e^x sin x on [0, 3pi/2]: seed both Rolle branches
//! near the left node, integrate them and rebuild the interpolation error.

use std::f64::consts::PI;

use rollekit::rolle::{
    endpoint_rolle, reconstruct_error, seed_scan, solve_trajectory, Endpoint, TrajectoryOptions,
    DEFAULT_SEED_ABSCISSA, DEFAULT_STEP,
};
use rollekit::InterpolationProblem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prob = InterpolationProblem::from_text("exp(x)*sin(x)", vec![0.0, 1.5 * PI])?;
    println!("P_1(x) = {}", prob.interpolant());

    let seeds = seed_scan(&prob, DEFAULT_SEED_ABSCISSA, 2000)?;
    for (k, seed) in seeds.iter().enumerate() {
        let traj = solve_trajectory(&prob, seed, DEFAULT_STEP, &TrajectoryOptions::default())?;
        let recon = reconstruct_error(&prob, &traj)?;
        println!(
            "branch {}: xi({:e}) = {:.4}, {} samples, xi(0) ~ {:.4}, xi(3pi/2) ~ {:.4}, max |diff| = {:.2e}",
            k + 1,
            seed.x_z,
            seed.xi_z,
            traj.samples.len(),
            endpoint_rolle(&traj, Endpoint::Left)?,
            endpoint_rolle(&traj, Endpoint::Right)?,
            recon.max_abs_diff,
        );
        for x in [0.5, 2.0, 4.0] {
            println!("    xi({x}) = {:.6}", traj.xi_at(x).unwrap());
        }
    }
    Ok(())
}
