//! Boost a drifting free Gaussian into several frames and compare the
//! measured AW phase with the lab-frame prediction.

use std::sync::Arc;

use geophase::{evolve, states, verify_transformation_law, BoostParams, Grid, HamiltonianSpec};

fn main() -> geophase::Result<()> {
    let grid = Grid::new(1024, -40.0, 80.0 / 1024.0)?;
    let psi = states::gaussian(grid, 0.0, 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::free(1.0, 1.0)?);
    let traj = evolve(&psi, &h, 2.0, 8192, 1)?;

    println!(
        "{:>6} {:>10} {:>10} {:>10} {:>10}",
        "v", "gAW lab", "gAW moved", "gap", "residual"
    );
    for v in [0.0, 0.25, 0.5, 1.0] {
        let r = verify_transformation_law(&traj, &BoostParams::new(v, 1.0, 1.0)?)?;
        println!(
            "{v:>6} {:>10.6} {:>10.6} {:>10.6} {:>10.2e}",
            r.gamma_aw_lab, r.gamma_aw_boosted, r.non_invariance_gap, r.residual_law
        );
    }
    Ok(())
}
