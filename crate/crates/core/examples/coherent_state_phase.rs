//! Phases of an oscillator coherent state over one period against their
//! closed forms.

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::phases::angle_distance;
use geophase::{evolve, phase_report, states, Grid, HamiltonianSpec};
use num_complex::Complex64;

fn main() -> geophase::Result<()> {
    let grid = Grid::new(256, -20.0, 40.0 / 256.0)?;
    let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0)?);
    for n in [0.25, 0.5, 1.0] {
        let psi = states::coherent(grid.clone(), Complex64::new(f64::sqrt(n), 0.0), 1.0, 1.0)?;
        let traj = evolve(&psi, &h, 2.0 * PI, 4096, 1)?;
        let r = phase_report(&traj, 1e-4)?;
        let aa = r.aa_phase.expect("one period is cyclic");
        println!(
            "|alpha|^2 = {n:4}: dynamic {:+.6} (exact {:+.6}), AA {:+.6}, off by {:.1e}",
            r.dynamic_phase,
            -2.0 * PI * (n + 0.5),
            aa,
            angle_distance(aa, 2.0 * PI * n)
        );
    }
    Ok(())
}
