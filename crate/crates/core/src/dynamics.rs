//! Time evolution under `H = (P - A(t))^2 / 2m + V(Q, t)`.
//!
//! [`evolve`] is a second-order Strang split-step propagator;
//! [`evolve_dense_oracle`] diagonalizes the full discretized Hamiltonian and
//! serves as an independent reference for small grids.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{Grid, WaveFunction};

/// Norm tolerance a trajectory sample must meet.
pub const TRAJECTORY_NORM_TOLERANCE: f64 = 1e-8;

/// Largest grid the dense oracle accepts.
pub const ORACLE_MAX_POINTS: usize = 128;

type PotentialFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type VectorPotentialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Scalar potential `V(x, t)`.
#[derive(Clone)]
pub enum Potential {
    Free,
    /// `m omega^2 x^2 / 2`
    Harmonic {
        omega: f64,
    },
    /// `sum_k c_k x^k`
    Polynomial(Vec<f64>),
    Custom {
        f: PotentialFn,
        time_dependent: bool,
    },
}

impl fmt::Debug for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Potential::Free => write!(f, "Free"),
            Potential::Harmonic { omega } => write!(f, "Harmonic {{ omega: {omega} }}"),
            Potential::Polynomial(c) => write!(f, "Polynomial({c:?})"),
            Potential::Custom { time_dependent, .. } => {
                write!(f, "Custom {{ time_dependent: {time_dependent} }}")
            }
        }
    }
}

/// Spatially uniform vector potential `A(t)` (momentum units).
#[derive(Clone)]
pub enum VectorPotential {
    Zero,
    Constant(f64),
    Custom(VectorPotentialFn),
}

impl fmt::Debug for VectorPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VectorPotential::Zero => write!(f, "Zero"),
            VectorPotential::Constant(a) => write!(f, "Constant({a})"),
            VectorPotential::Custom(_) => write!(f, "Custom"),
        }
    }
}

impl VectorPotential {
    pub fn at(&self, t: f64) -> f64 {
        match self {
            VectorPotential::Zero => 0.0,
            VectorPotential::Constant(a) => *a,
            VectorPotential::Custom(f) => f(t),
        }
    }

    pub fn is_constant(&self) -> bool {
        !matches!(self, VectorPotential::Custom(_))
    }
}

#[derive(Clone, Debug)]
pub struct HamiltonianSpec {
    mass: f64,
    hbar: f64,
    potential: Potential,
    vector_potential: VectorPotential,
    label: String,
}

impl HamiltonianSpec {
    pub fn new(mass: f64, hbar: f64, potential: Potential, vector_potential: VectorPotential) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) || !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "need m, hbar > 0 (m = {mass}, hbar = {hbar})"
            )));
        }
        if let Potential::Harmonic { omega } = potential {
            if !omega.is_finite() {
                return Err(Error::InvalidArgument("non-finite oscillator frequency".into()));
            }
        }
        let label = match &potential {
            Potential::Free => "free".to_string(),
            Potential::Harmonic { omega } => format!("harmonic(omega={omega})"),
            Potential::Polynomial(c) => format!("polynomial{c:?}"),
            Potential::Custom { .. } => "custom".to_string(),
        };
        Ok(HamiltonianSpec {
            mass,
            hbar,
            potential,
            vector_potential,
            label,
        })
    }

    pub fn free(mass: f64, hbar: f64) -> Result<Self> {
        Self::new(mass, hbar, Potential::Free, VectorPotential::Zero)
    }

    pub fn harmonic(mass: f64, hbar: f64, omega: f64) -> Result<Self> {
        Self::new(mass, hbar, Potential::Harmonic { omega }, VectorPotential::Zero)
    }

    pub fn with_vector_potential(mut self, a: VectorPotential) -> Self {
        self.vector_potential = a;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn potential(&self) -> &Potential {
        &self.potential
    }

    pub fn vector_potential(&self) -> &VectorPotential {
        &self.vector_potential
    }

    pub fn potential_at(&self, x: f64, t: f64) -> f64 {
        match &self.potential {
            Potential::Free => 0.0,
            Potential::Harmonic { omega } => 0.5 * self.mass * omega * omega * x * x,
            Potential::Polynomial(c) => c.iter().rev().fold(0.0, |acc, ck| acc * x + ck),
            Potential::Custom { f, .. } => f(x, t),
        }
    }

    pub fn vector_potential_at(&self, t: f64) -> f64 {
        self.vector_potential.at(t)
    }

    pub fn is_time_independent(&self) -> bool {
        let static_v = !matches!(
            self.potential,
            Potential::Custom {
                time_dependent: true,
                ..
            }
        );
        static_v && self.vector_potential.is_constant()
    }

    /// `<psi|H(t)|psi>` at the state's own time tag.
    pub fn energy(&self, psi: &WaveFunction) -> Result<f64> {
        let t = psi.time();
        let a = self.vector_potential_at(t);
        let m2 = 2.0 * self.mass;
        let kinetic = psi.expect_momentum_fn(|p| (p - a) * (p - a) / m2)?;
        let potential = psi.expect_position_fn(|x| self.potential_at(x, t))?;
        Ok(kinetic + potential)
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if (grid.hbar() - self.hbar).abs() > 1e-15 * self.hbar {
            return Err(Error::InvalidArgument(format!(
                "grid hbar {} differs from Hamiltonian hbar {}",
                grid.hbar(),
                self.hbar
            )));
        }
        Ok(())
    }

    fn check_finite(&self, grid: &Grid, t: f64) -> Result<()> {
        let a = self.vector_potential_at(t);
        if !a.is_finite() || grid.positions().iter().any(|&x| !self.potential_at(x, t).is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite potential at t = {t}")));
        }
        Ok(())
    }
}

/// Time-ordered samples of a state curve on one grid.
#[derive(Clone, Debug)]
pub struct Trajectory {
    states: Vec<WaveFunction>,
    hamiltonian: Option<Arc<HamiltonianSpec>>,
}

impl Trajectory {
    /// Validates shared grid, strictly increasing time tags and
    /// normalization.
    pub fn new(states: Vec<WaveFunction>) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::InvalidTrajectory("no states".into()));
        };
        for (i, s) in states.iter().enumerate() {
            if !s.same_grid(first) {
                return Err(Error::GridMismatch);
            }
            let norm = s.norm();
            if (norm - 1.0).abs() > TRAJECTORY_NORM_TOLERANCE {
                return Err(Error::InvalidTrajectory(format!("sample {i} has norm {norm}")));
            }
            if i > 0 && !(s.time() > states[i - 1].time()) {
                return Err(Error::InvalidTrajectory(format!(
                    "times not strictly increasing at sample {i}"
                )));
            }
        }
        Ok(Trajectory {
            states,
            hamiltonian: None,
        })
    }

    pub fn with_hamiltonian(mut self, h: Arc<HamiltonianSpec>) -> Self {
        self.hamiltonian = Some(h);
        self
    }

    pub fn without_hamiltonian(mut self) -> Self {
        self.hamiltonian = None;
        self
    }

    pub fn states(&self) -> &[WaveFunction] {
        &self.states
    }

    pub fn into_states(self) -> Vec<WaveFunction> {
        self.states
    }

    pub fn times(&self) -> Vec<f64> {
        self.states.iter().map(|s| s.time()).collect()
    }

    pub fn hamiltonian(&self) -> Option<&Arc<HamiltonianSpec>> {
        self.hamiltonian.as_ref()
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn first(&self) -> &WaveFunction {
        &self.states[0]
    }

    pub fn last(&self) -> &WaveFunction {
        &self.states[self.states.len() - 1]
    }

    pub fn grid(&self) -> &Arc<Grid> {
        self.first().grid()
    }

    pub fn duration(&self) -> f64 {
        self.last().time() - self.first().time()
    }

    /// Same state sequence with time tags mapped through a strictly
    /// increasing `warp`. The Hamiltonian is dropped: the states no longer
    /// solve its equation of motion at the new times.
    pub fn reparametrized(&self, warp: impl Fn(f64) -> f64) -> Result<Trajectory> {
        let states = self
            .states
            .iter()
            .map(|s| s.clone().with_time(warp(s.time())))
            .collect();
        Trajectory::new(states)
    }

    /// Multiplies sample `k` by `exp(i chi_k)`.
    pub fn phase_lifted(&self, chi: &[f64]) -> Result<Trajectory> {
        if chi.len() != self.states.len() {
            return Err(Error::InvalidArgument(format!(
                "{} phases for {} samples",
                chi.len(),
                self.states.len()
            )));
        }
        let states = self
            .states
            .iter()
            .zip(chi)
            .map(|(s, &c)| s.clone().scaled(Complex64::from_polar(1.0, c)))
            .collect();
        Ok(Trajectory {
            states,
            hamiltonian: self.hamiltonian.clone(),
        })
    }

    /// Sub-trajectory `[start, end)` by sample index.
    pub fn slice(&self, start: usize, end: usize) -> Result<Trajectory> {
        if start >= end || end > self.states.len() {
            return Err(Error::InvalidArgument(format!("bad slice {start}..{end}")));
        }
        Ok(Trajectory {
            states: self.states[start..end].to_vec(),
            hamiltonian: self.hamiltonian.clone(),
        })
    }
}

/// Strang split-step integration of `psi0` over `[t0, t0 + t_final]`, with
/// `t0 = psi0.time()`. Every `sample_every`-th step is stored; the initial
/// and final states always are.
pub fn evolve(
    psi0: &WaveFunction,
    h: &Arc<HamiltonianSpec>,
    t_final: f64,
    n_steps: usize,
    sample_every: usize,
) -> Result<Trajectory> {
    if n_steps == 0 || sample_every == 0 {
        return Err(Error::InvalidArgument("n_steps and sample_every must be >= 1".into()));
    }
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(Error::InvalidArgument(format!("duration {t_final} must be >= 0")));
    }
    let grid = psi0.grid().clone();
    h.check_grid(&grid)?;
    let norm = psi0.norm();
    if (norm - 1.0).abs() > TRAJECTORY_NORM_TOLERANCE {
        return Err(Error::NotNormalized { norm });
    }
    psi0.check_guard()?;
    let t0 = psi0.time();
    if t_final == 0.0 {
        return Ok(Trajectory::new(vec![psi0.clone()])?.with_hamiltonian(h.clone()));
    }

    let dt = t_final / n_steps as f64;
    let hbar = h.hbar();
    let mass = h.mass();
    let n = grid.n_points();
    let positions = grid.positions();

    let half_potential = |t: f64| -> Vec<Complex64> {
        positions
            .iter()
            .map(|&x| Complex64::from_polar(1.0, -h.potential_at(x, t) * dt / (2.0 * hbar)))
            .collect()
    };
    let kinetic = |t: f64| -> Vec<Complex64> {
        let a = h.vector_potential_at(t);
        grid.momenta()
            .map(|p| Complex64::from_polar(1.0, -(p - a) * (p - a) * dt / (2.0 * mass * hbar)))
            .collect()
    };

    let static_v = !matches!(
        h.potential(),
        Potential::Custom {
            time_dependent: true,
            ..
        }
    );
    let static_a = h.vector_potential().is_constant();
    h.check_finite(&grid, t0 + 0.5 * dt)?;
    let mut v_half = half_potential(t0 + 0.5 * dt);
    let mut k_full = kinetic(t0 + 0.5 * dt);

    let mut amps = psi0.amplitudes().to_vec();
    let mut scratch = Vec::new();
    let mut states = Vec::with_capacity(n_steps / sample_every + 2);
    states.push(psi0.clone());

    for step in 0..n_steps {
        let t_mid = t0 + (step as f64 + 0.5) * dt;
        if step > 0 {
            if !static_v {
                h.check_finite(&grid, t_mid)?;
                v_half = half_potential(t_mid);
            }
            if !static_a {
                k_full = kinetic(t_mid);
            }
        }
        for (a, v) in amps.iter_mut().zip(&v_half) {
            *a *= v;
        }
        grid.apply_momentum_diagonal(&mut amps, &k_full, &mut scratch);
        for (a, v) in amps.iter_mut().zip(&v_half) {
            *a *= v;
        }

        let done = step + 1 == n_steps;
        if done || (step + 1) % sample_every == 0 {
            if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
                return Err(Error::NumericalBlowup { step: step + 1 });
            }
            let t = if done {
                t0 + t_final
            } else {
                t0 + (step + 1) as f64 * dt
            };
            let psi = WaveFunction::from_parts(grid.clone(), amps.clone(), t);
            psi.check_guard()?;
            states.push(psi);
        }
    }
    debug_assert!(states.iter().all(|s| s.amplitudes().len() == n));
    Ok(Trajectory::new(states)?.with_hamiltonian(h.clone()))
}

/// Dense Hermitian matrix of `h` on the grid of `psi0`, kinetic part built
/// by spectral conjugation.
pub fn dense_hamiltonian(grid: &Arc<Grid>, h: &HamiltonianSpec, t: f64) -> DMatrix<Complex64> {
    let n = grid.n_points();
    let a = h.vector_potential_at(t);
    let mass = h.mass();
    let kinetic: Vec<Complex64> = grid
        .momenta()
        .map(|p| Complex64::new((p - a) * (p - a) / (2.0 * mass), 0.0))
        .collect();
    let mut matrix = DMatrix::<Complex64>::zeros(n, n);
    let mut scratch = Vec::new();
    for k in 0..n {
        let mut column = vec![Complex64::default(); n];
        column[k] = Complex64::new(1.0, 0.0);
        grid.apply_momentum_diagonal(&mut column, &kinetic, &mut scratch);
        for (j, c) in column.into_iter().enumerate() {
            matrix[(j, k)] = c;
        }
    }
    for (k, &x) in grid.positions().iter().enumerate() {
        matrix[(k, k)] += h.potential_at(x, t);
    }
    (&matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Exact `exp(-i H t / hbar) psi0` by diagonalization, sampled at
/// `n_samples + 1` evenly spaced times over `[t0, t0 + t_final]`.
pub fn evolve_dense_oracle(
    psi0: &WaveFunction,
    h: &Arc<HamiltonianSpec>,
    t_final: f64,
    n_samples: usize,
) -> Result<Trajectory> {
    let grid = psi0.grid().clone();
    let n = grid.n_points();
    if n > ORACLE_MAX_POINTS {
        return Err(Error::OracleSize { n });
    }
    if !h.is_time_independent() {
        return Err(Error::TimeDependentOracle);
    }
    h.check_grid(&grid)?;
    let t0 = psi0.time();
    if t_final == 0.0 {
        return Ok(Trajectory::new(vec![psi0.clone()])?.with_hamiltonian(h.clone()));
    }
    if n_samples == 0 || !(t_final > 0.0) {
        return Err(Error::InvalidArgument("need n_samples >= 1 and t_final > 0".into()));
    }
    let eig = dense_hamiltonian(&grid, h, t0).symmetric_eigen();
    let basis = eig.eigenvectors;
    let coeffs = basis.adjoint() * DVector::from_column_slice(psi0.amplitudes());
    let hbar = h.hbar();

    let mut states = Vec::with_capacity(n_samples + 1);
    states.push(psi0.clone());
    for s in 1..=n_samples {
        let tau = t_final * s as f64 / n_samples as f64;
        let phased = DVector::from_iterator(
            n,
            coeffs
                .iter()
                .zip(eig.eigenvalues.iter())
                .map(|(c, e)| c * Complex64::from_polar(1.0, -e * tau / hbar)),
        );
        let amps = &basis * phased;
        states.push(WaveFunction::from_parts(
            grid.clone(),
            amps.as_slice().to_vec(),
            t0 + tau,
        ));
    }
    Ok(Trajectory::new(states)?.with_hamiltonian(h.clone()))
}

/// `|psi(t)> -> exp(i f(Q, t)) |psi(t)>` on every sample. The result carries
/// no Hamiltonian: the transformed curve is generated by a gauge-transformed
/// one that is generally not of the supported form.
pub fn gauge_transform(traj: &Trajectory, f: impl Fn(f64, f64) -> f64) -> Trajectory {
    let states = traj
        .states()
        .iter()
        .map(|s| {
            let t = s.time();
            s.clone().multiplied(|x| Complex64::from_polar(1.0, f(x, t)))
        })
        .collect();
    Trajectory {
        states,
        hamiltonian: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states;

    fn grid() -> Arc<Grid> {
        Grid::new(128, -12.0, 24.0 / 128.0).unwrap()
    }

    #[test]
    fn hamiltonian_validation() {
        assert!(HamiltonianSpec::free(0.0, 1.0).is_err());
        assert!(HamiltonianSpec::free(1.0, -1.0).is_err());
        assert!(HamiltonianSpec::harmonic(1.0, 1.0, f64::NAN).is_err());
        let h = HamiltonianSpec::harmonic(1.0, 1.0, 2.0).unwrap().with_label("osc");
        assert_eq!(h.label(), "osc");
        assert_eq!(h.potential_at(1.5, 0.0), 0.5 * 4.0 * 2.25);
        assert!(h.is_time_independent());
    }

    #[test]
    fn time_dependence_classification() {
        let driven = HamiltonianSpec::free(1.0, 1.0)
            .unwrap()
            .with_vector_potential(VectorPotential::Custom(Arc::new(|t| t)));
        assert!(!driven.is_time_independent());
        assert_eq!(driven.vector_potential_at(0.3), 0.3);
        let quartic = HamiltonianSpec::new(
            1.0,
            1.0,
            Potential::Polynomial(vec![1.0, 0.0, 0.0, 0.0, 2.0]),
            VectorPotential::Zero,
        )
        .unwrap();
        assert_eq!(quartic.potential_at(2.0, 5.0), 33.0);
        assert!(quartic.is_time_independent());
    }

    #[test]
    fn trajectory_validation() {
        let psi = states::gaussian(grid(), 0.0, 1.0, 0.0).unwrap();
        assert!(matches!(Trajectory::new(vec![]), Err(Error::InvalidTrajectory(_))));
        let same_time = vec![psi.clone(), psi.clone()];
        assert!(matches!(Trajectory::new(same_time), Err(Error::InvalidTrajectory(_))));
        let unnormalized = psi.clone().scaled(Complex64::new(1.1, 0.0)).with_time(1.0);
        assert!(matches!(
            Trajectory::new(vec![psi.clone(), unnormalized]),
            Err(Error::InvalidTrajectory(_))
        ));
        let other = states::gaussian(Grid::new(64, -8.0, 0.25).unwrap(), 0.0, 1.0, 0.0)
            .unwrap()
            .with_time(1.0);
        assert!(matches!(Trajectory::new(vec![psi, other]), Err(Error::GridMismatch)));
    }

    #[test]
    fn slice_and_duration() {
        let psi = states::gaussian(grid(), 0.0, 1.0, 0.0).unwrap();
        let h = Arc::new(HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap());
        let traj = evolve(&psi, &h, 1.0, 10, 1).unwrap();
        assert_eq!(traj.len(), 11);
        assert!((traj.duration() - 1.0).abs() < 1e-14);
        let part = traj.slice(2, 5).unwrap();
        assert_eq!(part.len(), 3);
        assert!(part.hamiltonian().is_some());
        assert!(traj.slice(5, 5).is_err());
        assert!(traj.reparametrized(|t| -t).is_err());
    }

    #[test]
    fn evolution_argument_checks() {
        let psi = states::gaussian(grid(), 0.0, 1.0, 0.0).unwrap();
        let h = Arc::new(HamiltonianSpec::free(1.0, 1.0).unwrap());
        assert!(evolve(&psi, &h, 1.0, 0, 1).is_err());
        assert!(evolve(&psi, &h, 1.0, 10, 0).is_err());
        assert!(evolve(&psi, &h, -1.0, 10, 1).is_err());
        let other_hbar = Arc::new(HamiltonianSpec::free(1.0, 2.0).unwrap());
        assert!(evolve(&psi, &other_hbar, 1.0, 10, 1).is_err());
    }

    #[test]
    fn dense_hamiltonian_is_hermitian_with_oscillator_spectrum() {
        let h = HamiltonianSpec::harmonic(1.0, 1.0, 1.0).unwrap();
        let m = dense_hamiltonian(&grid(), &h, 0.0);
        assert!((&m - m.adjoint()).norm() < 1e-12);
        let mut e: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, ek) in e.iter().take(5).enumerate() {
            assert!((ek - (k as f64 + 0.5)).abs() < 1e-8, "level {k}: {ek}");
        }
    }

    #[test]
    fn dense_oracle_rejects_driven_systems() {
        let psi = states::gaussian(grid(), 0.0, 1.0, 0.0).unwrap();
        let h = Arc::new(
            HamiltonianSpec::free(1.0, 1.0)
                .unwrap()
                .with_vector_potential(VectorPotential::Custom(Arc::new(|t| t))),
        );
        assert!(matches!(
            evolve_dense_oracle(&psi, &h, 1.0, 1),
            Err(Error::TimeDependentOracle)
        ));
    }
}
