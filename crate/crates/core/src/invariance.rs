//! Executable form of the boost transformation law for the
//! Aitchison-Wanelik phase.
//!
//! For `psi~(t) = U_G(t) psi(t)` the law reads
//!
//! ```text
//! e^{i gAW[psi~]} = e^{i gAW[psi]} R(vT) exp(-i (v/hbar) int <P_x> dt)
//! R(d) = ( <psi0|e^{i d P/hbar}|psiT> <psiT|psi0>
//!        / (<psi0|psiT> <psiT|e^{-i d P/hbar}|psi0>) )^{1/2}
//! ```
//!
//! and `int <P_x> dt = int <A_x> dt + m (<Q_x>_T - <Q_x>_0)` splits the
//! momentum term into a gauge-dependent and an endpoint part. Every
//! comparison here is between unit complex factors.

use num_complex::Complex64;
use serde::Serialize;

use crate::boost::{boost_trajectory, BoostParams};
use crate::dynamics::Trajectory;
use crate::error::{Error, Frame, Result};
use crate::grid::inner_product;
use crate::phases::{aw_phase, cyclicity_defect, OVERLAP_FLOOR};
use crate::quadrature::{central_differences, trapezoid};

/// Relative sample-to-sample change of `<P_x>` that flags the momentum
/// quadrature as under-resolved.
pub const QUADRATURE_VARIATION_LIMIT: f64 = 0.1;

/// `|int <A_x> dt|` below which the vector-potential factor counts as unity.
pub const VANISHING_A_INTEGRAL: f64 = 1e-10;

fn unit(z: Complex64) -> Complex64 {
    z / z.norm()
}

fn phase_factor(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

fn floor_checked(z: Complex64) -> Result<Complex64> {
    if z.norm() <= OVERLAP_FLOOR {
        return Err(Error::OrthogonalStates { overlap: z.norm() });
    }
    Ok(z)
}

/// The square-root overlap ratio `R(d)` for the endpoint states of `traj`,
/// with `e^{+- i d P / hbar}` realized by spectral translation. The root is
/// taken on the branch of `arg` of the numerator pair.
pub fn overlap_ratio_factor(traj: &Trajectory, displacement: f64) -> Result<Complex64> {
    let (psi0, psi_t) = (traj.first(), traj.last());
    let forward = floor_checked(inner_product(psi0, &psi_t.translate(displacement)?)?)?;
    let backward = floor_checked(inner_product(psi_t, &psi0.translate(-displacement)?)?)?;
    let z0 = floor_checked(inner_product(psi0, psi_t)?)?;
    let numerator = forward * z0.conj();
    let denominator = z0 * backward;
    let root = (numerator / denominator).sqrt();
    Ok(unit(if (root * numerator.conj()).re < 0.0 {
        -root
    } else {
        root
    }))
}

/// Samplewise `<Q_x>` and `<P_x>`.
pub fn expectation_series(traj: &Trajectory) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut q = Vec::with_capacity(traj.len());
    let mut p = Vec::with_capacity(traj.len());
    for s in traj.states() {
        q.push(s.expect_q()?);
        p.push(s.expect_p()?);
    }
    Ok((q, p))
}

/// `int <P_x> dt` by trapezoid, plus whether the sampling looks too coarse
/// for it.
pub fn momentum_integral(times: &[f64], p: &[f64]) -> (f64, bool) {
    let scale = p.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let coarse = scale > 0.0
        && p.windows(2)
            .any(|w| (w[1] - w[0]).abs() > QUADRATURE_VARIATION_LIMIT * scale);
    (trapezoid(times, p), coarse)
}

/// `int A_x(t) dt`; `A_x` is uniform so `<A_x> = A_x(t)`.
pub fn vector_potential_integral(traj: &Trajectory) -> Result<f64> {
    let h = traj.hamiltonian().ok_or(Error::MissingHamiltonian)?;
    let times = traj.times();
    let a: Vec<f64> = times.iter().map(|&t| h.vector_potential_at(t)).collect();
    Ok(trapezoid(&times, &a))
}

/// The full correction multiplying `e^{i gAW[psi]}` under the boost.
pub fn predicted_boost_factor(traj: &Trajectory, b: &BoostParams) -> Result<Complex64> {
    if b.v == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let (_, p) = expectation_series(traj)?;
    let (integral, coarse) = momentum_integral(&traj.times(), &p);
    if coarse {
        log::warn!("<P_x> varies by more than 10% between samples; momentum quadrature may be inaccurate");
    }
    let ratio = overlap_ratio_factor(traj, b.v * traj.duration())?;
    Ok(ratio * phase_factor(-b.v * integral / b.hbar))
}

#[derive(Debug, Clone, Serialize)]
pub struct TransformationReport {
    pub velocity: f64,
    pub gamma_aw_lab: f64,
    pub gamma_aw_boosted: f64,
    pub predicted_factor: Complex64,
    pub residual_law: f64,
    pub overlap_ratio_factor: Complex64,
    pub momentum_integral: f64,
    pub vector_potential_integral: Option<f64>,
    /// `m v (<Q_x>_T - <Q_x>_0) / hbar`
    pub endpoint_q_term: f64,
    pub residual_gauge_split: Option<f64>,
    pub cyclic_case_applicable: bool,
    pub residual_cyclic: Option<f64>,
    pub non_invariance_gap: f64,
    pub lab_cyclicity_defect: f64,
    pub boosted_cyclicity_defect: f64,
    pub quadrature_warning: bool,
}

struct LabSide {
    aw: f64,
    q: Vec<f64>,
    momentum_integral: f64,
    coarse: bool,
    a_integral: Option<f64>,
    defect: f64,
}

fn lab_side(traj: &Trajectory) -> Result<LabSide> {
    let aw = aw_phase(traj)?;
    let times = traj.times();
    let (q, p) = expectation_series(traj)?;
    let (momentum_integral, coarse) = momentum_integral(&times, &p);
    let a_integral = match traj.hamiltonian() {
        Some(_) => Some(vector_potential_integral(traj)?),
        None => None,
    };
    Ok(LabSide {
        aw,
        q,
        momentum_integral,
        coarse,
        a_integral,
        defect: cyclicity_defect(traj)?,
    })
}

/// Computes `gAW` on the boosted trajectory directly and compares it with
/// the prediction from lab-frame data alone.
pub fn verify_transformation_law(traj: &Trajectory, b: &BoostParams) -> Result<TransformationReport> {
    verify_with_tolerance(traj, b, crate::phases::DEFAULT_CYCLIC_TOLERANCE)
}

pub fn verify_with_tolerance(
    traj: &Trajectory,
    b: &BoostParams,
    cyclic_tolerance: f64,
) -> Result<TransformationReport> {
    let lab = lab_side(traj).map_err(|e| e.in_frame(Frame::Lab))?;
    let boosted = boost_trajectory(traj, b).map_err(|e| e.in_frame(Frame::Boosted))?;
    let aw_boosted = aw_phase(&boosted).map_err(|e| e.in_frame(Frame::Boosted))?;
    let boosted_defect = cyclicity_defect(&boosted).map_err(|e| e.in_frame(Frame::Boosted))?;

    let duration = traj.duration();
    let ratio = if b.v == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        overlap_ratio_factor(traj, b.v * duration).map_err(|e| e.in_frame(Frame::Lab))?
    };
    if lab.coarse && b.v != 0.0 {
        log::warn!("<P_x> varies by more than 10% between samples; momentum quadrature may be inaccurate");
    }
    let momentum_term = if b.v == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        phase_factor(-b.v * lab.momentum_integral / b.hbar)
    };
    let predicted = ratio * momentum_term;

    let lab_factor = phase_factor(lab.aw);
    let boosted_factor = phase_factor(aw_boosted);
    let residual_law = (boosted_factor - lab_factor * predicted).norm();

    let dq = lab.q[lab.q.len() - 1] - lab.q[0];
    let endpoint_q_term = b.mass * b.v * dq / b.hbar;
    let residual_gauge_split = lab.a_integral.map(|a_int| {
        let split = if b.v == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            ratio * phase_factor(-b.v * a_int / b.hbar) * phase_factor(-endpoint_q_term)
        };
        (boosted_factor - lab_factor * split).norm()
    });

    let cyclic_case_applicable =
        lab.defect < cyclic_tolerance && lab.a_integral.is_some_and(|a| a.abs() < VANISHING_A_INTEGRAL);
    let residual_cyclic = cyclic_case_applicable.then(|| (boosted_factor - lab_factor * ratio).norm());

    Ok(TransformationReport {
        velocity: b.v,
        gamma_aw_lab: lab.aw,
        gamma_aw_boosted: aw_boosted,
        predicted_factor: predicted,
        residual_law,
        overlap_ratio_factor: ratio,
        momentum_integral: lab.momentum_integral,
        vector_potential_integral: lab.a_integral,
        endpoint_q_term,
        residual_gauge_split,
        cyclic_case_applicable,
        residual_cyclic,
        non_invariance_gap: (boosted_factor - lab_factor).norm(),
        lab_cyclicity_defect: lab.defect,
        boosted_cyclicity_defect: boosted_defect,
        quadrature_warning: lab.coarse,
    })
}

/// Interior residuals of `<P_x> - <A_x> - m d<Q_x>/dt`.
#[derive(Debug, Clone, Serialize)]
pub struct EhrenfestProfile {
    pub times: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_abs: f64,
}

pub fn ehrenfest_decomposition(traj: &Trajectory) -> Result<EhrenfestProfile> {
    let h = traj.hamiltonian().ok_or(Error::MissingHamiltonian)?;
    if traj.len() < 3 {
        return Err(Error::TooFewSamples {
            needed: 3,
            got: traj.len(),
        });
    }
    let times = traj.times();
    let (q, p) = expectation_series(traj)?;
    let velocity = central_differences(&times, &q);
    let residuals: Vec<f64> = velocity
        .iter()
        .enumerate()
        .map(|(i, dq)| {
            let k = i + 1;
            p[k] - h.vector_potential_at(times[k]) - h.mass() * dq
        })
        .collect();
    let max_abs = residuals.iter().fold(0.0_f64, |m, r| m.max(r.abs()));
    Ok(EhrenfestProfile {
        times: times[1..times.len() - 1].to_vec(),
        residuals,
        max_abs,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GaugeSplitOutcome {
    pub residual: f64,
    pub vector_potential_integral: f64,
    pub endpoint_q_term: f64,
    /// `|exp(-i m v (<Q>_T - <Q>_0) / hbar) - 1|`
    pub endpoint_factor_deviation: f64,
    pub lab_cyclic: bool,
}

/// The law with `int <P_x> dt` replaced by its vector-potential plus
/// endpoint-position decomposition.
pub fn verify_gauge_split_law(traj: &Trajectory, b: &BoostParams) -> Result<GaugeSplitOutcome> {
    verify_gauge_split_with_tolerance(traj, b, crate::phases::DEFAULT_CYCLIC_TOLERANCE)
}

pub fn verify_gauge_split_with_tolerance(
    traj: &Trajectory,
    b: &BoostParams,
    cyclic_tolerance: f64,
) -> Result<GaugeSplitOutcome> {
    if traj.hamiltonian().is_none() {
        return Err(Error::MissingHamiltonian);
    }
    let report = verify_with_tolerance(traj, b, cyclic_tolerance)?;
    Ok(GaugeSplitOutcome {
        residual: report.residual_gauge_split.unwrap_or(f64::NAN),
        vector_potential_integral: report.vector_potential_integral.unwrap_or(0.0),
        endpoint_q_term: report.endpoint_q_term,
        endpoint_factor_deviation: (phase_factor(-report.endpoint_q_term) - 1.0).norm(),
        lab_cyclic: report.lab_cyclicity_defect < cyclic_tolerance,
    })
}

#[derive(Debug, Clone, Serialize)]
pub enum CyclicCaseOutcome {
    Applicable {
        residual: f64,
        /// Difference between `R(vT)` evaluated as `(v, T)` and `(2v, T/2)`.
        displacement_check: f64,
    },
    NotApplicable {
        reason: String,
    },
}

/// The special case of a lab-cyclic curve with vanishing `int <A_x> dt`,
/// where only the translation overlap ratio survives.
pub fn verify_cyclic_special_case(
    traj: &Trajectory,
    b: &BoostParams,
    cyclic_tolerance: f64,
) -> Result<CyclicCaseOutcome> {
    let defect = cyclicity_defect(traj)?;
    if !(defect < cyclic_tolerance) {
        return Ok(CyclicCaseOutcome::NotApplicable {
            reason: format!("lab trajectory not cyclic (defect {defect:.3e})"),
        });
    }
    let a_integral = match traj.hamiltonian() {
        Some(_) => vector_potential_integral(traj)?,
        None => {
            return Ok(CyclicCaseOutcome::NotApplicable {
                reason: "no Hamiltonian to fix the gauge".into(),
            })
        }
    };
    if a_integral.abs() >= VANISHING_A_INTEGRAL {
        return Ok(CyclicCaseOutcome::NotApplicable {
            reason: format!("int <A_x> dt = {a_integral:.3e} does not vanish"),
        });
    }
    let report = verify_with_tolerance(traj, b, cyclic_tolerance)?;
    let duration = traj.duration();
    let displacement_check = if b.v == 0.0 {
        0.0
    } else {
        let a = overlap_ratio_factor(traj, b.v * duration)?;
        let c = overlap_ratio_factor(traj, (2.0 * b.v) * (duration / 2.0))?;
        (a - c).norm()
    };
    Ok(CyclicCaseOutcome::Applicable {
        residual: report.residual_cyclic.unwrap_or(f64::NAN),
        displacement_check,
    })
}
