//! Geometric phases of simulated one-dimensional quantum trajectories and
//! their transformation under passive Galilean boosts.
//!
//! The crate is organized bottom-up:
//!
//! - [`grid`]: periodic grid, wave functions, spectral momentum, translation
//! - [`dynamics`]: split-step and dense-oracle Schrödinger evolution
//! - [`phases`]: total, dynamic, Aharonov-Anandan and Aitchison-Wanelik phases
//! - [`boost`]: the boost operator and its conjugation identities
//! - [`invariance`]: the boost transformation law for the geometric phase
//! - [`scenario`] / [`report`]: declarative scenario runner behind the CLI

// `!(x > 0.0)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boost;
pub mod dynamics;
pub mod error;
pub mod grid;
pub mod invariance;
pub mod phases;
pub mod quadrature;
pub mod report;
pub mod scenario;
pub mod states;

pub use boost::{apply_boost, boost_trajectory, check_operator_transforms, BoostParams};
pub use dynamics::{
    evolve, evolve_dense_oracle, gauge_transform, HamiltonianSpec, Potential, Trajectory, VectorPotential,
};
pub use error::{Error, Frame, Result};
pub use grid::{inner_product, Grid, GuardBand, WaveFunction};
pub use invariance::{predicted_boost_factor, verify_transformation_law, TransformationReport};
pub use phases::{
    aa_phase, aw_phase, dynamic_phase, geodesic_closure_phase, local_phase_change, phase_report, total_phase,
    PhaseReport,
};
pub use scenario::{run_scenario, RunReport, ScenarioConfig, ScenarioError};
