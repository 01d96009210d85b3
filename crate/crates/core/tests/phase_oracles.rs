mod common;

use std::f64::consts::PI;
use std::sync::Arc;

use geophase::dynamics::{evolve, HamiltonianSpec};
use geophase::grid::Grid;
use geophase::phases::{
    aa_phase, angle_distance, aw_phase, dynamic_phase, energy_dynamic_phase, phase_report, principal, total_phase,
};
use geophase::states;
use geophase::Error;
use num_complex::Complex64;

use common::{free_gaussian, free_gaussian_phases, real, sho};

#[test]
fn plane_wave_dynamic_phase() {
    let g = Grid::builder(64, -8.0, 0.25).guard(None).build().unwrap();
    let k = g.wavenumbers()[2];
    let psi = states::plane_wave(g, k).unwrap();
    let h = Arc::new(HamiltonianSpec::free(1.0, 1.0).unwrap());
    let t = 40.0;
    let traj = evolve(&psi, &h, t, 400, 1).unwrap();
    // the unwrapped sum runs past -pi, unlike the endpoint phase
    let expected = -k * k * t / 2.0;
    assert!(expected < -PI);
    assert!((dynamic_phase(&traj).unwrap() - expected).abs() < 1e-10);
    assert!(aw_phase(&traj).unwrap().abs() < 1e-10);
}

#[test]
fn coherent_state_dynamic_and_geometric_phase() {
    for n2 in [0.25, 0.5, 1.0] {
        let traj = sho(real(f64::sqrt(n2)), 1.0, 4096);
        let gd = dynamic_phase(&traj).unwrap();
        assert!((gd + 2.0 * PI * (n2 + 0.5)).abs() < 1e-5, "n = {n2}: {gd}");
        assert!(angle_distance(total_phase(&traj).unwrap(), PI) < 1e-6);
        let aa = aa_phase(&traj, 1e-4).unwrap();
        assert!(angle_distance(aa, 2.0 * PI * n2) < 5e-5);
    }
}

#[test]
fn energy_form_agrees_with_overlap_form() {
    let traj = sho(Complex64::new(0.3, -0.6), 0.7, 2048);
    let overlaps = dynamic_phase(&traj).unwrap();
    let energy = energy_dynamic_phase(&traj).unwrap().unwrap();
    assert!((overlaps - energy).abs() < 1e-5);
}

#[test]
fn free_gaussian_phases_match_closed_form() {
    let (total, dynamic, aw) = free_gaussian_phases(1.0, 2.0);
    let traj = free_gaussian(512, 60.0, 1.0, 0.0, 2.0, 4096);
    let report = phase_report(&traj, 1e-4).unwrap();
    assert!((report.total_phase - total).abs() < 1e-6);
    assert!((report.dynamic_phase - dynamic).abs() < 1e-6);
    assert!((report.aw_phase - aw).abs() < 1e-6);
    assert!(report.aw_phase > 0.018 && report.aa_phase.is_none());
}

#[test]
fn open_curve_has_no_aa_phase() {
    let traj = sho(real(0.7), 0.5, 1024);
    assert!(matches!(aa_phase(&traj, 1e-4), Err(Error::NotCyclic { .. })));
    assert!(aw_phase(&traj).is_ok());
}

#[test]
fn report_fields_are_consistent() {
    let traj = sho(real(0.5), 1.0, 2048);
    let r = phase_report(&traj, 1e-4).unwrap();
    assert_eq!(r.per_step_phases.len(), traj.len() - 1);
    assert!((r.per_step_phases.iter().sum::<f64>() - r.dynamic_phase).abs() < 1e-12);
    assert!((principal(r.total_phase - r.dynamic_phase) - r.aw_phase).abs() < 1e-15);
    assert_eq!(r.aa_phase, Some(r.aw_phase));
}
