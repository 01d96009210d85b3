//! Initial-state constructors.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, WaveFunction};

/// Normalized Gaussian packet `exp(-(x-x0)^2 / (4 width^2) + i p0 (x-x0) / hbar)`
/// at `t = 0`; `width` is the position standard deviation.
pub fn gaussian(grid: Arc<Grid>, center: f64, width: f64, momentum: f64) -> Result<WaveFunction> {
    if !(width > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "gaussian width {width} must be positive"
        )));
    }
    let hbar = grid.hbar();
    WaveFunction::from_fn(grid, 0.0, |x| {
        let d = x - center;
        Complex64::new(-d * d / (4.0 * width * width), momentum * d / hbar).exp()
    })
    .normalize()
}

/// Parameters of the harmonic-oscillator coherent state `|alpha>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentState {
    pub alpha: Complex64,
    pub omega: f64,
    pub mass: f64,
}

impl CoherentState {
    pub fn center(&self, hbar: f64) -> f64 {
        (2.0 * hbar / (self.mass * self.omega)).sqrt() * self.alpha.re
    }

    pub fn momentum(&self, hbar: f64) -> f64 {
        (2.0 * hbar * self.mass * self.omega).sqrt() * self.alpha.im
    }

    /// Position standard deviation, `sqrt(hbar / (2 m omega))`.
    pub fn width(&self, hbar: f64) -> f64 {
        (hbar / (2.0 * self.mass * self.omega)).sqrt()
    }

    /// `hbar omega (|alpha|^2 + 1/2)`.
    pub fn energy(&self, hbar: f64) -> f64 {
        hbar * self.omega * (self.alpha.norm_sqr() + 0.5)
    }

    pub fn wave_function(&self, grid: Arc<Grid>) -> Result<WaveFunction> {
        if !(self.omega > 0.0 && self.mass > 0.0) {
            return Err(Error::InvalidArgument("coherent state needs omega, m > 0".into()));
        }
        let hbar = grid.hbar();
        gaussian(grid, self.center(hbar), self.width(hbar), self.momentum(hbar))
    }
}

pub fn coherent(grid: Arc<Grid>, alpha: Complex64, omega: f64, mass: f64) -> Result<WaveFunction> {
    CoherentState { alpha, omega, mass }.wave_function(grid)
}

/// Normalized `exp(i p0 x / hbar)`; only an eigenstate of the discrete
/// momentum when `p0` is one of the grid momenta.
pub fn plane_wave(grid: Arc<Grid>, momentum: f64) -> Result<WaveFunction> {
    let hbar = grid.hbar();
    WaveFunction::from_fn(grid, 0.0, |x| Complex64::from_polar(1.0, momentum * x / hbar)).normalize()
}
