//! A static gauge leaves the AW phase alone; a time-dependent one does not.

use std::sync::Arc;

use geophase::phases::angle_distance;
use geophase::{aw_phase, evolve, gauge_transform, states, Grid, HamiltonianSpec};

fn main() -> geophase::Result<()> {
    let grid = Grid::new(1024, -40.0, 80.0 / 1024.0)?;
    let psi = states::gaussian(grid, 0.0, 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::free(1.0, 1.0)?);
    let traj = evolve(&psi, &h, 2.0, 8192, 1)?;
    let aw = aw_phase(&traj)?;

    let fixed = gauge_transform(&traj, |x, _| 0.3 * x);
    let ramped = gauge_transform(&traj, |x, t| 0.3 * x * t);
    println!("AW {aw:+.6}");
    println!(
        "f = 0.3 x    changes AW by {:.1e}",
        angle_distance(aw_phase(&fixed)?, aw)
    );
    println!(
        "f = 0.3 x t  changes AW by {:.4}",
        angle_distance(aw_phase(&ramped)?, aw)
    );
    Ok(())
}
