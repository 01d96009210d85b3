//! Split-step propagation against exact diagonalization on a small grid.

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::{evolve, evolve_dense_oracle, inner_product, states, Grid, HamiltonianSpec};
use num_complex::Complex64;

fn main() -> geophase::Result<()> {
    let grid = Grid::new(128, -12.0, 24.0 / 128.0)?;
    let psi = states::coherent(grid.clone(), Complex64::new(0.5f64.sqrt(), 0.0), 1.0, 1.0)?;
    let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0)?);
    let t = 2.0 * PI;
    let exact = evolve_dense_oracle(&psi, &h, t, 1)?;

    let mut previous: Option<f64> = None;
    for steps in [256, 512, 1024, 2048, 4096] {
        let last = evolve(&psi, &h, t, steps, steps)?.last().clone();
        let error = last
            .amplitudes()
            .iter()
            .zip(exact.last().amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
            * grid.dx().sqrt();
        let infidelity = 1.0 - inner_product(exact.last(), &last)?.norm_sqr();
        let ratio = previous.map_or(String::new(), |p| format!("  ratio {:.3}", p / error));
        println!("dt = T/{steps:<5} error {error:.3e}  infidelity {infidelity:.1e}{ratio}");
        previous = Some(error);
    }
    Ok(())
}
