//! `<P> = <A> + m d<Q>/dt` along a drift under a constant vector potential.

use std::sync::Arc;

use geophase::invariance::ehrenfest_decomposition;
use geophase::{evolve, states, Grid, HamiltonianSpec, VectorPotential};

fn main() -> geophase::Result<()> {
    let grid = Grid::new(512, -30.0, 60.0 / 512.0)?;
    let psi = states::gaussian(grid, -1.0, 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::free(1.0, 1.0)?.with_vector_potential(VectorPotential::Constant(0.5)));
    let traj = evolve(&psi, &h, 2.0, 4096, 1)?;
    let profile = ehrenfest_decomposition(&traj)?;
    for k in (0..profile.times.len()).step_by(1000) {
        println!("t = {:.3}  residual {:+.2e}", profile.times[k], profile.residuals[k]);
    }
    println!("max |residual| = {:.2e}", profile.max_abs);
    Ok(())
}
