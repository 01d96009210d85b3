//! A closed loop in the lab is an open curve for a moving observer.

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::phases::cyclicity_defect;
use geophase::{aa_phase, aw_phase, boost_trajectory, evolve, states, BoostParams, Grid, HamiltonianSpec};
use num_complex::Complex64;

fn main() -> geophase::Result<()> {
    let grid = Grid::new(256, -20.0, 40.0 / 256.0)?;
    let psi = states::coherent(grid, Complex64::new(0.5f64.sqrt(), 0.0), 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0)?);
    let lab = evolve(&psi, &h, 2.0 * PI, 4096, 1)?;
    let moving = boost_trajectory(&lab, &BoostParams::new(0.5, 1.0, 1.0)?)?;

    println!(
        "lab:     defect {:.2e}, AA {:+.6}",
        cyclicity_defect(&lab)?,
        aa_phase(&lab, 1e-4)?
    );
    println!(
        "boosted: defect {:.4}, AW {:+.6}",
        cyclicity_defect(&moving)?,
        aw_phase(&moving)?
    );
    match aa_phase(&moving, 1e-4) {
        Ok(_) => println!("boosted AA unexpectedly defined"),
        Err(e) => println!("boosted AA: {e}"),
    }
    Ok(())
}
