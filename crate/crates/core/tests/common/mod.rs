#![allow(dead_code)]

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::dynamics::{evolve, HamiltonianSpec, Trajectory, VectorPotential};
use geophase::grid::Grid;
use geophase::states::{self, CoherentState};
use num_complex::Complex64;

pub fn grid(n: usize, length: f64) -> Arc<Grid> {
    Grid::new(n, -length / 2.0, length / n as f64).unwrap()
}

/// Free Gaussian packet, `m = hbar = 1`, sampled at every step.
pub fn free_gaussian(n: usize, length: f64, width: f64, p0: f64, t: f64, steps: usize) -> Trajectory {
    let g = grid(n, length);
    let psi = states::gaussian(g, 0.0, width, p0).unwrap();
    let h = Arc::new(HamiltonianSpec::free(1.0, 1.0).unwrap());
    evolve(&psi, &h, t, steps, 1).unwrap()
}

/// The reference free scenario: n = 1024, L = 80, width 1, p0 = 1, T = 2,
/// dt = 2^-12.
pub fn reference_free() -> Trajectory {
    free_gaussian(1024, 80.0, 1.0, 1.0, 2.0, 8192)
}

/// Free Gaussian drifting under a constant vector potential.
pub fn constant_a_free(a: f64) -> Trajectory {
    let g = grid(512, 60.0);
    let psi = states::gaussian(g, -1.0, 1.0, 1.0).unwrap();
    let h = Arc::new(
        HamiltonianSpec::free(1.0, 1.0)
            .unwrap()
            .with_vector_potential(VectorPotential::Constant(a)),
    );
    evolve(&psi, &h, 2.0, 4096, 1).unwrap()
}

/// Harmonic oscillator (`m = hbar = omega = 1`) from a coherent state,
/// evolved for `fraction` of a period.
pub fn sho(alpha: Complex64, fraction: f64, steps: usize) -> Trajectory {
    sho_on(grid(256, 40.0), alpha, fraction, steps)
}

pub fn sho_on(g: Arc<Grid>, alpha: Complex64, fraction: f64, steps: usize) -> Trajectory {
    let c = CoherentState {
        alpha,
        omega: 1.0,
        mass: 1.0,
    };
    let psi = c.wave_function(g).unwrap();
    let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap());
    evolve(&psi, &h, 2.0 * PI * fraction, steps, 1).unwrap()
}

pub fn real(a: f64) -> Complex64 {
    Complex64::new(a, 0.0)
}

/// Analytic free-Gaussian phases for `m = hbar = 1`, zero mean momentum:
/// `(total, dynamic, aw)`.
pub fn free_gaussian_phases(width: f64, t: f64) -> (f64, f64, f64) {
    let tau = t / (2.0 * width * width);
    let total = -0.5 * (tau / 2.0).atan();
    let dynamic = -tau / 4.0;
    (total, dynamic, total - dynamic)
}
