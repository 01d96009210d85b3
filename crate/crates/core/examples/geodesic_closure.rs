//! Close a half-period oscillator curve with a projective geodesic and
//! compare the AA phase of the loop with the AW phase of the open arc.

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::phases::geodesic_closure;
use geophase::{aa_phase, aw_phase, evolve, states, Grid, HamiltonianSpec};
use num_complex::Complex64;

fn main() -> geophase::Result<()> {
    let grid = Grid::new(256, -20.0, 40.0 / 256.0)?;
    let psi = states::coherent(grid, Complex64::new(0.5f64.sqrt(), 0.0), 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0)?);
    let open = evolve(&psi, &h, PI, 2048, 1)?;
    let aw = aw_phase(&open)?;
    println!("open arc: AW {aw:+.9}");
    for n in [16, 32, 64, 128] {
        let closed = geodesic_closure(&open, n)?;
        let aa = aa_phase(&closed, 1e-4)?;
        println!("n_geodesic {n:>3}: AA of loop {aa:+.9}, gap {:.1e}", (aa - aw).abs());
    }
    Ok(())
}
