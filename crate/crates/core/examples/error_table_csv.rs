//! Write a reconstruction CSV to stdout and read it back.

use rollekit::io::{read_trajectory_csv, write_trajectory_csv};
use rollekit::rolle::{reconstruct_error, seed_scan, solve_trajectory, TrajectoryOptions};
use rollekit::InterpolationProblem;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let prob = InterpolationProblem::from_text("exp(x)*sin(x)", vec![0.0, 1.0, 2.0])?;
    let seed = seed_scan(&prob, 1e-5, 2000)?[0];
    // coarse step keeps the output short
    let traj = solve_trajectory(&prob, &seed, 0.05, &TrajectoryOptions::default())?;
    let recon = reconstruct_error(&prob, &traj)?;

    let mut buf = Vec::new();
    write_trajectory_csv(&mut buf, &recon, &traj.guard_bands)?;
    print!("{}", String::from_utf8(buf.clone())?);

    let table = read_trajectory_csv(buf.as_slice())?;
    eprintln!("{} rows, guard nodes {:?}", table.rows.len(), table.guard_nodes);
    Ok(())
}
