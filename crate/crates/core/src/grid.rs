//! Uniform periodic 1D grid, wave functions on it, and the spectral
//! machinery that realizes the momentum operator.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Norm deviation beyond which expectation values refuse a state.
pub const NORM_TOLERANCE: f64 = 1e-6;

/// Outer region of the periodic box that must stay (nearly) empty so that
/// translations do not wrap support around the boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GuardBand {
    /// Width of the band at each end, as a fraction of the box length.
    pub fraction: f64,
    /// Largest probability tolerated inside the band.
    pub max_probability: f64,
}

impl Default for GuardBand {
    fn default() -> Self {
        GuardBand {
            fraction: 0.05,
            max_probability: 1e-8,
        }
    }
}

pub struct GridBuilder {
    n_points: usize,
    x_min: f64,
    dx: f64,
    hbar: f64,
    guard: Option<GuardBand>,
}

impl GridBuilder {
    pub fn hbar(mut self, hbar: f64) -> Self {
        self.hbar = hbar;
        self
    }

    /// `None` disables wraparound detection (plane waves and other
    /// genuinely periodic states).
    pub fn guard(mut self, guard: Option<GuardBand>) -> Self {
        self.guard = guard;
        self
    }

    pub fn build(self) -> Result<Arc<Grid>> {
        let GridBuilder {
            n_points: n,
            x_min,
            dx,
            hbar,
            guard,
        } = self;
        if n < 8 {
            return Err(Error::InvalidGrid(format!("n_points = {n}, need at least 8")));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(Error::InvalidGrid(format!("dx = {dx} must be positive")));
        }
        if !x_min.is_finite() {
            return Err(Error::InvalidGrid("x_min must be finite".into()));
        }
        if !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidGrid(format!("hbar = {hbar} must be positive")));
        }
        if let Some(g) = guard {
            if !(0.0..0.5).contains(&g.fraction) || g.max_probability < 0.0 {
                return Err(Error::InvalidGrid(format!("bad guard band {g:?}")));
            }
        }
        let length = n as f64 * dx;
        let positions = (0..n).map(|k| x_min + k as f64 * dx).collect();
        let wavenumbers: Vec<f64> = (0..n)
            .map(|j| {
                let j = if j <= (n - 1) / 2 {
                    j as f64
                } else {
                    j as f64 - n as f64
                };
                2.0 * PI * j / length
            })
            .collect();
        let scale = (dx / n as f64).sqrt();
        let momentum_phase = wavenumbers
            .iter()
            .map(|&k| Complex64::from_polar(scale, -k * x_min))
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Arc::new(Grid {
            n_points: n,
            x_min,
            dx,
            hbar,
            guard,
            positions,
            wavenumbers,
            momentum_phase,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }))
    }
}

/// Uniform periodic grid `x_k = x_min + k dx` with its conjugate momentum
/// samples `p_j = hbar k_j` in FFT order.
pub struct Grid {
    n_points: usize,
    x_min: f64,
    dx: f64,
    hbar: f64,
    guard: Option<GuardBand>,
    positions: Vec<f64>,
    wavenumbers: Vec<f64>,
    // sqrt(dx/n) e^{-i k_j x_min}: maps raw FFT output onto samples of the
    // continuum momentum amplitude times sqrt(dp).
    momentum_phase: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n_points", &self.n_points)
            .field("x_min", &self.x_min)
            .field("dx", &self.dx)
            .field("hbar", &self.hbar)
            .field("guard", &self.guard)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n_points == other.n_points && self.x_min == other.x_min && self.dx == other.dx && self.hbar == other.hbar
    }
}

impl Grid {
    pub fn builder(n_points: usize, x_min: f64, dx: f64) -> GridBuilder {
        GridBuilder {
            n_points,
            x_min,
            dx,
            hbar: 1.0,
            guard: Some(GuardBand::default()),
        }
    }

    /// Grid with natural units and the default guard band.
    pub fn new(n_points: usize, x_min: f64, dx: f64) -> Result<Arc<Grid>> {
        Self::builder(n_points, x_min, dx).build()
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn length(&self) -> f64 {
        self.n_points as f64 * self.dx
    }

    pub fn guard(&self) -> Option<GuardBand> {
        self.guard
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn wavenumbers(&self) -> &[f64] {
        &self.wavenumbers
    }

    /// Spacing between momentum samples, `2 pi hbar / L`.
    pub fn dp(&self) -> f64 {
        2.0 * PI * self.hbar / self.length()
    }

    pub fn momenta(&self) -> impl Iterator<Item = f64> + '_ {
        self.wavenumbers.iter().map(move |k| self.hbar * k)
    }

    pub(crate) fn fft_forward(&self, buf: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        scratch.resize(self.forward.get_inplace_scratch_len(), Complex64::default());
        self.forward.process_with_scratch(buf, scratch);
    }

    /// Unnormalized inverse transform.
    pub(crate) fn fft_inverse(&self, buf: &mut [Complex64], scratch: &mut Vec<Complex64>) {
        scratch.resize(self.inverse.get_inplace_scratch_len(), Complex64::default());
        self.inverse.process_with_scratch(buf, scratch);
    }

    /// Applies the operator diagonal in momentum space with the given
    /// per-bin multipliers.
    pub(crate) fn apply_momentum_diagonal(
        &self,
        buf: &mut [Complex64],
        multipliers: &[Complex64],
        scratch: &mut Vec<Complex64>,
    ) {
        self.fft_forward(buf, scratch);
        let inv_n = 1.0 / self.n_points as f64;
        for (a, m) in buf.iter_mut().zip(multipliers) {
            *a *= m * inv_n;
        }
        self.fft_inverse(buf, scratch);
    }

    fn guard_probability(&self, amplitudes: &[Complex64]) -> f64 {
        let Some(guard) = self.guard else {
            return 0.0;
        };
        let band = guard.fraction * self.length();
        let lo = self.x_min + band;
        let hi = self.x_min + self.length() - band;
        let (mut inside, mut total) = (0.0, 0.0);
        for (x, a) in self.positions.iter().zip(amplitudes) {
            let p = a.norm_sqr();
            total += p;
            if *x < lo || *x >= hi {
                inside += p;
            }
        }
        if total > 0.0 {
            inside / total
        } else {
            0.0
        }
    }
}

/// Complex amplitudes on a [`Grid`] at a time tag.
#[derive(Clone, Debug)]
pub struct WaveFunction {
    grid: Arc<Grid>,
    amplitudes: Vec<Complex64>,
    time: f64,
}

impl WaveFunction {
    pub fn from_amplitudes(grid: Arc<Grid>, amplitudes: Vec<Complex64>, time: f64) -> Result<Self> {
        if amplitudes.len() != grid.n_points {
            return Err(Error::InvalidArgument(format!(
                "expected {} amplitudes, got {}",
                grid.n_points,
                amplitudes.len()
            )));
        }
        Ok(WaveFunction { grid, amplitudes, time })
    }

    /// Samples `f` on the grid. The result is not normalized.
    pub fn from_fn(grid: Arc<Grid>, time: f64, f: impl Fn(f64) -> Complex64) -> Self {
        let amplitudes = grid.positions.iter().map(|&x| f(x)).collect();
        WaveFunction { grid, amplitudes, time }
    }

    /// Inverse of [`WaveFunction::to_momentum`].
    pub fn from_momentum(grid: Arc<Grid>, coefficients: &[Complex64], time: f64) -> Result<Self> {
        if coefficients.len() != grid.n_points {
            return Err(Error::InvalidArgument(format!(
                "expected {} momentum coefficients, got {}",
                grid.n_points,
                coefficients.len()
            )));
        }
        let mut buf: Vec<Complex64> = coefficients
            .iter()
            .zip(&grid.momentum_phase)
            .map(|(c, ph)| c / ph)
            .collect();
        let mut scratch = Vec::new();
        grid.fft_inverse(&mut buf, &mut scratch);
        let inv_n = 1.0 / grid.n_points as f64;
        buf.iter_mut().for_each(|a| *a *= inv_n);
        Ok(WaveFunction {
            grid,
            amplitudes: buf,
            time,
        })
    }

    pub(crate) fn from_parts(grid: Arc<Grid>, amplitudes: Vec<Complex64>, time: f64) -> Self {
        debug_assert_eq!(amplitudes.len(), grid.n_points);
        WaveFunction { grid, amplitudes, time }
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amplitudes
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// `sqrt(dx * sum |psi_k|^2)`.
    pub fn norm(&self) -> f64 {
        (self.grid.dx * self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>()).sqrt()
    }

    pub fn normalize(mut self) -> Result<Self> {
        let norm = self.norm();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::NotNormalized { norm });
        }
        let inv = 1.0 / norm;
        self.amplitudes.iter_mut().for_each(|a| *a *= inv);
        Ok(self)
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        self.amplitudes.iter_mut().for_each(|a| *a *= factor);
        self
    }

    /// Multiplies each amplitude by `f(x_k)`.
    pub fn multiplied(mut self, f: impl Fn(f64) -> Complex64) -> Self {
        for (a, &x) in self.amplitudes.iter_mut().zip(&self.grid.positions) {
            *a *= f(x);
        }
        self
    }

    /// `dx * sum conj(self_k) other_k`.
    pub fn inner(&self, other: &WaveFunction) -> Result<Complex64> {
        inner_product(self, other)
    }

    /// Momentum-space coefficients, normalized so that their plain sum of
    /// squared moduli equals `norm()^2`; `c_j / sqrt(dp)` samples the
    /// continuum momentum amplitude at `p_j`.
    pub fn to_momentum(&self) -> Vec<Complex64> {
        let mut buf = self.amplitudes.clone();
        let mut scratch = Vec::new();
        self.grid.fft_forward(&mut buf, &mut scratch);
        for (c, ph) in buf.iter_mut().zip(&self.grid.momentum_phase) {
            *c *= ph;
        }
        buf
    }

    fn require_normalized(&self) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE || !norm.is_finite() {
            return Err(Error::NotNormalized { norm });
        }
        Ok(())
    }

    pub fn expect_q(&self) -> Result<f64> {
        self.require_normalized()?;
        let dx = self.grid.dx;
        Ok(dx
            * self
                .amplitudes
                .iter()
                .zip(&self.grid.positions)
                .map(|(a, x)| x * a.norm_sqr())
                .sum::<f64>())
    }

    pub fn expect_p(&self) -> Result<f64> {
        self.expect_momentum_fn(|p| p)
    }

    /// `sum_j f(p_j) |c_j|^2` for any function of the momentum operator.
    pub fn expect_momentum_fn(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        self.require_normalized()?;
        Ok(self
            .to_momentum()
            .iter()
            .zip(self.grid.momenta())
            .map(|(c, p)| f(p) * c.norm_sqr())
            .sum())
    }

    /// `dx * sum f(x_k) |psi_k|^2`.
    pub fn expect_position_fn(&self, f: impl Fn(f64) -> f64) -> Result<f64> {
        self.require_normalized()?;
        let dx = self.grid.dx;
        Ok(dx
            * self
                .amplitudes
                .iter()
                .zip(&self.grid.positions)
                .map(|(a, &x)| f(x) * a.norm_sqr())
                .sum::<f64>())
    }

    /// Fraction of the probability inside the guard band (0 without one).
    pub fn guard_probability(&self) -> f64 {
        self.grid.guard_probability(&self.amplitudes)
    }

    pub fn check_guard(&self) -> Result<()> {
        if let Some(guard) = self.grid.guard {
            let probability = self.guard_probability();
            if probability > guard.max_probability {
                return Err(Error::DomainOverflow {
                    probability,
                    time: Some(self.time),
                });
            }
        }
        Ok(())
    }

    /// `exp(i a P / hbar) psi`, i.e. the state `psi(x + a)`.
    pub fn translate(&self, a: f64) -> Result<WaveFunction> {
        self.check_guard()?;
        let out = self.translate_unchecked(a);
        out.check_guard()?;
        Ok(out)
    }

    pub(crate) fn translate_unchecked(&self, a: f64) -> WaveFunction {
        if a == 0.0 {
            return self.clone();
        }
        let mult: Vec<Complex64> = self
            .grid
            .wavenumbers
            .iter()
            .map(|k| Complex64::from_polar(1.0, k * a))
            .collect();
        let mut buf = self.amplitudes.clone();
        let mut scratch = Vec::new();
        self.grid.apply_momentum_diagonal(&mut buf, &mult, &mut scratch);
        WaveFunction::from_parts(self.grid.clone(), buf, self.time)
    }

    pub(crate) fn same_grid(&self, other: &WaveFunction) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }
}

/// Discretized `<a|b>`.
pub fn inner_product(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    if !a.same_grid(b) {
        return Err(Error::GridMismatch);
    }
    let sum: Complex64 = a.amplitudes.iter().zip(&b.amplitudes).map(|(x, y)| x.conj() * y).sum();
    Ok(sum * a.grid.dx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    fn grid() -> Arc<Grid> {
        Grid::new(256, -20.0, 40.0 / 256.0).unwrap()
    }

    #[test]
    fn rejects_small_or_degenerate_grids() {
        assert!(matches!(Grid::new(4, 0.0, 1.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid::new(16, 0.0, 0.0), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid::new(16, 0.0, -1.0), Err(Error::InvalidGrid(_))));
    }

    #[test]
    fn wavenumbers_follow_fft_layout() {
        let g = Grid::new(8, 0.0, 1.0).unwrap();
        let dk = 2.0 * PI / 8.0;
        let expected = [0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0].map(|j| j * dk);
        for (k, e) in g.wavenumbers().iter().zip(expected) {
            assert!((k - e).abs() < 1e-15);
        }
    }

    #[test]
    fn inner_product_identities() {
        let g = grid();
        let psi = states::gaussian(g.clone(), 0.5, 1.0, 0.3).unwrap();
        let one = psi.inner(&psi).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        let ipsi = psi.clone().scaled(Complex64::i());
        assert!((psi.inner(&ipsi).unwrap() - Complex64::i()).norm() < 1e-12);
        let other = states::gaussian(g.clone(), -1.0, 0.7, -0.4).unwrap();
        let ab = psi.inner(&other).unwrap();
        let ba = other.inner(&psi).unwrap();
        assert!((ab - ba.conj()).norm() < 1e-15);
    }

    #[test]
    fn inner_product_rejects_mismatched_grids() {
        let a = states::gaussian(grid(), 0.0, 1.0, 0.0).unwrap();
        let b = states::gaussian(Grid::new(128, -20.0, 40.0 / 128.0).unwrap(), 0.0, 1.0, 0.0).unwrap();
        assert!(matches!(inner_product(&a, &b), Err(Error::GridMismatch)));
    }

    #[test]
    fn plane_wave_occupies_single_momentum_bin() {
        let g = Grid::builder(64, -8.0, 0.25).guard(None).build().unwrap();
        let p0 = g.hbar() * g.wavenumbers()[5];
        let psi = states::plane_wave(g.clone(), p0).unwrap();
        let c = psi.to_momentum();
        for (j, cj) in c.iter().enumerate() {
            if j == 5 {
                assert!((cj.norm() - 1.0).abs() < 1e-12);
            } else {
                assert!(cj.norm() < 1e-12, "bin {j}: {cj}");
            }
        }
    }

    #[test]
    fn translate_by_zero_and_one_step() {
        let g = grid();
        let psi = states::gaussian(g.clone(), 1.0, 1.0, 0.8).unwrap();
        let same = psi.translate(0.0).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(same.amplitudes()) {
            assert!((a - b).norm() < 1e-14);
        }
        let shifted = psi.translate(g.dx()).unwrap();
        let n = g.n_points();
        for k in 0..n {
            let expected = psi.amplitudes()[(k + 1) % n];
            assert!((shifted.amplitudes()[k] - expected).norm() < 1e-10);
        }
    }

    #[test]
    fn translate_detects_wraparound() {
        let g = grid();
        let psi = states::gaussian(g.clone(), 10.0, 1.0, 0.0).unwrap();
        // centre would land at 10 + 8 = 18, inside the outer 2 units
        let err = psi.translate(-8.0).unwrap_err();
        assert!(matches!(err, Error::DomainOverflow { .. }));
    }

    #[test]
    fn expectations_refuse_unnormalized_states() {
        let g = grid();
        let psi = states::gaussian(g, 0.0, 1.0, 0.0)
            .unwrap()
            .scaled(Complex64::new(1.1, 0.0));
        assert!(matches!(psi.expect_q(), Err(Error::NotNormalized { .. })));
        assert!(matches!(psi.expect_p(), Err(Error::NotNormalized { .. })));
    }

    #[test]
    fn momentum_round_trip_is_identity() {
        let g = grid();
        let psi = states::gaussian(g.clone(), 0.3, 0.9, 1.1).unwrap();
        let back = WaveFunction::from_momentum(g, &psi.to_momentum(), psi.time()).unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert!((a - b).norm() < 1e-12);
        }
    }
}
