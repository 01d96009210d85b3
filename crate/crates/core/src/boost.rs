//! Passive Galilean boosts along x.
//!
//! `U_G(t) = exp(-i m v Q / hbar) exp(i (v P - m v^2 / 2) t / hbar)`, so
//! `(U_G psi)(x) = exp(-i m v x / hbar) exp(-i m v^2 t / (2 hbar)) psi(x + v t)`.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::grid::WaveFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostParams {
    pub v: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl BoostParams {
    pub fn new(v: f64, mass: f64, hbar: f64) -> Result<Self> {
        if !v.is_finite() || !(mass > 0.0 && mass.is_finite()) || !(hbar > 0.0 && hbar.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "boost needs finite v and m, hbar > 0 (v = {v}, m = {mass}, hbar = {hbar})"
            )));
        }
        Ok(BoostParams { v, mass, hbar })
    }

    /// Inverse (active) boost.
    pub fn inverse(&self) -> Self {
        BoostParams { v: -self.v, ..*self }
    }

    fn check(&self, psi: &WaveFunction) -> Result<()> {
        if (psi.grid().hbar() - self.hbar).abs() > 1e-15 * self.hbar {
            return Err(Error::InvalidArgument(format!(
                "boost hbar {} differs from grid hbar {}",
                self.hbar,
                psi.grid().hbar()
            )));
        }
        Ok(())
    }

    fn ramp(&self) -> impl Fn(f64) -> Complex64 {
        let k = -self.mass * self.v / self.hbar;
        move |x| Complex64::from_polar(1.0, k * x)
    }

    fn constant_phase(&self, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, -self.mass * self.v * self.v * t / (2.0 * self.hbar))
    }
}

/// `U_G(t) psi`: translate by `v t`, multiply the constant phase, then the
/// position ramp.
pub fn apply_boost(psi: &WaveFunction, t: f64, b: &BoostParams) -> Result<WaveFunction> {
    b.check(psi)?;
    if b.v == 0.0 {
        return Ok(psi.clone());
    }
    Ok(psi.translate(b.v * t)?.scaled(b.constant_phase(t)).multiplied(b.ramp()))
}

/// `U_G(t) psi` through the other ordering of the factorization:
/// `exp(i v t P / hbar) exp(-i m v Q / hbar) exp(+i m v^2 t / (2 hbar))`.
pub fn apply_boost_commuted(psi: &WaveFunction, t: f64, b: &BoostParams) -> Result<WaveFunction> {
    b.check(psi)?;
    psi.check_guard()?;
    let ramped = psi.clone().multiplied(b.ramp());
    let out = ramped.translate_unchecked(b.v * t).scaled(b.constant_phase(t).conj());
    out.check_guard()?;
    Ok(out)
}

/// Boosts every sample at its own time (`t~ = t`). The result has no
/// Hamiltonian attached.
pub fn boost_trajectory(traj: &Trajectory, b: &BoostParams) -> Result<Trajectory> {
    let boosted: Vec<Result<WaveFunction>> = traj.states().par_iter().map(|s| apply_boost(s, s.time(), b)).collect();
    let states = boosted.into_iter().collect::<Result<Vec<_>>>()?;
    Trajectory::new(states)
}

/// Residuals of `U_G^dag Q U_G = Q - v t` and `U_G^dag P U_G = P - m v`
/// taken in expectation on `psi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorResiduals {
    pub position: f64,
    pub momentum: f64,
}

pub fn check_operator_transforms(psi: &WaveFunction, t: f64, b: &BoostParams) -> Result<OperatorResiduals> {
    let boosted = apply_boost(psi, t, b)?;
    let position = (boosted.expect_q()? - (psi.expect_q()? - b.v * t)).abs();
    let momentum = (boosted.expect_p()? - (psi.expect_p()? - b.mass * b.v)).abs();
    Ok(OperatorResiduals { position, momentum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use crate::states;

    #[test]
    fn zero_velocity_is_identity() {
        let g = Grid::new(256, -20.0, 40.0 / 256.0).unwrap();
        let psi = states::gaussian(g, 1.0, 1.0, 0.4).unwrap();
        let b = BoostParams::new(0.0, 1.0, 1.0).unwrap();
        let out = apply_boost(&psi, 3.0, &b).unwrap();
        for (x, y) in psi.amplitudes().iter().zip(out.amplitudes()) {
            assert!((x - y).norm() < 1e-14);
        }
        let r = check_operator_transforms(&psi, 3.0, &b).unwrap();
        assert!(r.position < 1e-12 && r.momentum < 1e-12);
    }

    #[test]
    fn at_time_zero_boost_is_a_ramp() {
        let g = Grid::new(512, -20.0, 40.0 / 512.0).unwrap();
        let psi = states::gaussian(g, -2.0, 1.2, 0.3).unwrap();
        let b = BoostParams::new(1.7, 2.0, 1.0).unwrap();
        let out = apply_boost(&psi, 0.0, &b).unwrap();
        assert!((out.expect_q().unwrap() - psi.expect_q().unwrap()).abs() < 1e-12);
        assert!((out.expect_p().unwrap() - (psi.expect_p().unwrap() - 3.4)).abs() < 1e-8);
        let r = check_operator_transforms(&psi, 0.0, &b).unwrap();
        assert!(r.position < 1e-10 && r.momentum < 1e-8);
    }

    #[test]
    fn momentum_sign_on_plane_wave() {
        let g = Grid::builder(64, -8.0, 0.25).guard(None).build().unwrap();
        let k = g.wavenumbers().to_vec();
        let psi = states::plane_wave(g, k[3]).unwrap();
        // m v chosen as two grid momenta so the boosted state is again on-grid
        let b = BoostParams::new(2.0 * k[1], 1.0, 1.0).unwrap();
        let out = apply_boost(&psi, 0.9, &b).unwrap();
        let c = out.to_momentum();
        assert!((c[1].norm() - 1.0).abs() < 1e-12, "P - m v lands in bin 1");
        assert!((out.expect_p().unwrap() - (k[3] - 2.0 * k[1])).abs() < 1e-12);
    }

    #[test]
    fn boost_and_inverse_compose_to_identity() {
        let g = Grid::new(512, -30.0, 60.0 / 512.0).unwrap();
        let psi = states::gaussian(g, 0.5, 1.0, -0.6).unwrap();
        let b = BoostParams::new(1.1, 1.0, 1.0).unwrap();
        let there = apply_boost(&psi, 2.0, &b).unwrap();
        let back = apply_boost(&there, 2.0, &b.inverse()).unwrap();
        for (x, y) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn overflowing_boost_reports_domain_error() {
        let g = Grid::new(256, -20.0, 40.0 / 256.0).unwrap();
        let psi = states::gaussian(g, 0.0, 1.0, 0.0).unwrap();
        let b = BoostParams::new(-5.0, 1.0, 1.0).unwrap();
        assert!(matches!(apply_boost(&psi, 3.0, &b), Err(Error::DomainOverflow { .. })));
    }
}
