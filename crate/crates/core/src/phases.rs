//! Phase functionals of a sampled state curve: total (Pancharatnam),
//! dynamic, Aharonov-Anandan and Aitchison-Wanelik, plus geodesic closure.
//!
//! All quantities are built from overlaps of consecutive samples, so they
//! depend only on the ordered state sequence and not on the time labels.
//! The square root in the Aitchison-Wanelik endpoint factor
//! `(z / conj(z))^{1/2}` is taken as `z / |z|`, i.e. with `arg z` in
//! `(-pi, pi]`; this branch reduces to the Aharonov-Anandan factor for
//! cyclic curves.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::grid::{inner_product, WaveFunction};
use crate::quadrature::trapezoid;

/// Below this overlap magnitude the relative phase is treated as undefined.
pub const OVERLAP_FLOOR: f64 = 1e-6;

/// Largest per-sample phase step accepted when accumulating `delta eta`.
pub const UNWRAP_LIMIT: f64 = PI / 4.0;

pub const DEFAULT_CYCLIC_TOLERANCE: f64 = 1e-4;

/// Allowed gap between the overlap and energy forms of the dynamic phase.
pub const ENERGY_FORM_TOLERANCE: f64 = 1e-4;

pub const BRANCH_CONVENTION: &str = "principal arg in (-pi, pi]";

/// Reduces an angle to `(-pi, pi]`.
pub fn principal(theta: f64) -> f64 {
    let r = theta.rem_euclid(2.0 * PI);
    if r > PI {
        r - 2.0 * PI
    } else {
        r
    }
}

/// Distance between two angles on the circle, in `[0, pi]`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    principal(a - b).abs()
}

fn checked_overlap(a: &WaveFunction, b: &WaveFunction) -> Result<Complex64> {
    let z = inner_product(a, b)?;
    if z.norm() <= OVERLAP_FLOOR {
        return Err(Error::OrthogonalStates { overlap: z.norm() });
    }
    Ok(z)
}

/// `arg <a|b>`, the finite-step local phase change between two states.
pub fn local_phase_change(a: &WaveFunction, b: &WaveFunction) -> Result<f64> {
    Ok(checked_overlap(a, b)?.arg())
}

/// Local phase changes between consecutive samples.
pub fn local_phase_changes(traj: &Trajectory) -> Result<Vec<f64>> {
    traj.states()
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let phase = local_phase_change(&w[0], &w[1])?;
            if phase.abs() >= UNWRAP_LIMIT {
                return Err(Error::Resolution { index: i, phase });
            }
            Ok(phase)
        })
        .collect()
}

fn overlap_dynamic_phase(traj: &Trajectory) -> Result<f64> {
    Ok(local_phase_changes(traj)?.iter().sum())
}

/// `-(1/hbar) int <H> dt` by trapezoidal quadrature over the samples, when
/// the trajectory carries its Hamiltonian.
pub fn energy_dynamic_phase(traj: &Trajectory) -> Option<Result<f64>> {
    let h = traj.hamiltonian()?;
    let energies: Result<Vec<f64>> = traj.states().iter().map(|s| h.energy(s)).collect();
    Some(energies.map(|e| -trapezoid(&traj.times(), &e) / h.hbar()))
}

/// Unwrapped dynamic phase, the sum of local phase changes. With a
/// Hamiltonian attached, the energy form is computed too and must agree
/// within [`ENERGY_FORM_TOLERANCE`].
pub fn dynamic_phase(traj: &Trajectory) -> Result<f64> {
    let from_overlaps = overlap_dynamic_phase(traj)?;
    if let Some(energy) = energy_dynamic_phase(traj) {
        let from_energy = energy?;
        if (from_overlaps - from_energy).abs() > ENERGY_FORM_TOLERANCE {
            return Err(Error::DynamicPhaseMismatch {
                from_overlaps,
                from_energy,
            });
        }
    }
    Ok(from_overlaps)
}

/// `<psi(0)|psi(T)>`.
pub fn endpoint_overlap(traj: &Trajectory) -> Result<Complex64> {
    inner_product(traj.first(), traj.last())
}

/// `arg <psi(0)|psi(T)>` in `(-pi, pi]`.
pub fn total_phase(traj: &Trajectory) -> Result<f64> {
    Ok(checked_overlap(traj.first(), traj.last())?.arg())
}

/// `1 - |<psi(0)|psi(T)>|`.
pub fn cyclicity_defect(traj: &Trajectory) -> Result<f64> {
    Ok((1.0 - endpoint_overlap(traj)?.norm()).max(0.0))
}

/// Aitchison-Wanelik phase, defined for open curves.
pub fn aw_phase(traj: &Trajectory) -> Result<f64> {
    let total = total_phase(traj)?;
    Ok(principal(total - overlap_dynamic_phase(traj)?))
}

/// Aharonov-Anandan phase; fails with [`Error::NotCyclic`] unless the curve
/// closes in projective space.
pub fn aa_phase(traj: &Trajectory, cyclic_tolerance: f64) -> Result<f64> {
    let defect = cyclicity_defect(traj)?;
    if !(defect < cyclic_tolerance) {
        return Err(Error::NotCyclic {
            defect,
            tolerance: cyclic_tolerance,
        });
    }
    aw_phase(traj)
}

/// The endpoint factor times the product of inverse unit step overlaps,
/// evaluated directly as complex numbers with no angle bookkeeping.
pub fn aw_phase_factor(traj: &Trajectory) -> Result<Complex64> {
    let z = checked_overlap(traj.first(), traj.last())?;
    let mut factor = z / z.norm();
    for w in traj.states().windows(2) {
        let step = checked_overlap(&w[0], &w[1])?;
        factor *= step.conj() / step.norm();
    }
    Ok(factor)
}

/// Appends the projective geodesic from `psi(T)` back to the ray of
/// `psi(0)`: normalized linear interpolation between `psi(T)` and the
/// in-phase representative `exp(i arg<psi(0)|psi(T)>) psi(0)`.
pub fn geodesic_closure(traj: &Trajectory, n_geodesic: usize) -> Result<Trajectory> {
    if n_geodesic == 0 {
        return Err(Error::InvalidArgument("n_geodesic must be >= 1".into()));
    }
    let start = traj.last();
    let theta = total_phase(traj)?;
    let end = traj.first().clone().scaled(Complex64::from_polar(1.0, theta));
    let t_end = start.time();
    let step_dt = if traj.duration() > 0.0 {
        traj.duration() / n_geodesic as f64
    } else {
        1.0 / n_geodesic as f64
    };

    let mut states = traj.states().to_vec();
    for j in 1..=n_geodesic {
        let s = j as f64 / n_geodesic as f64;
        let mixed: Vec<Complex64> = start
            .amplitudes()
            .iter()
            .zip(end.amplitudes())
            .map(|(a, b)| a * (1.0 - s) + b * s)
            .collect();
        let psi =
            WaveFunction::from_amplitudes(start.grid().clone(), mixed, t_end + j as f64 * step_dt)?.normalize()?;
        states.push(psi);
    }
    Trajectory::new(states)
}

/// Aharonov-Anandan phase of the geodesically closed curve.
pub fn geodesic_closure_phase(traj: &Trajectory, n_geodesic: usize) -> Result<f64> {
    aa_phase(&geodesic_closure(traj, n_geodesic)?, DEFAULT_CYCLIC_TOLERANCE)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub total_phase: f64,
    pub dynamic_phase: f64,
    /// Energy form of the dynamic phase, when a Hamiltonian is attached.
    pub dynamic_phase_energy: Option<f64>,
    pub aa_phase: Option<f64>,
    pub aw_phase: f64,
    pub cyclicity_defect: f64,
    pub branch_convention: String,
    #[serde(skip)]
    pub per_step_phases: Vec<f64>,
}

pub fn phase_report(traj: &Trajectory, cyclic_tolerance: f64) -> Result<PhaseReport> {
    let per_step_phases = local_phase_changes(traj)?;
    let dynamic = dynamic_phase(traj)?;
    let dynamic_phase_energy = energy_dynamic_phase(traj).transpose()?;
    let total = total_phase(traj)?;
    let defect = cyclicity_defect(traj)?;
    let aw = principal(total - dynamic);
    Ok(PhaseReport {
        total_phase: total,
        dynamic_phase: dynamic,
        dynamic_phase_energy,
        aa_phase: (defect < cyclic_tolerance).then_some(aw),
        aw_phase: aw,
        cyclicity_defect: defect,
        branch_convention: BRANCH_CONVENTION.to_string(),
        per_step_phases,
    })
}
