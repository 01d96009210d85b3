//! Declarative scenarios: TOML config in, [`RunReport`] out.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::boost::{check_operator_transforms, BoostParams};
use crate::dynamics::{evolve, gauge_transform, HamiltonianSpec, Potential, Trajectory, VectorPotential};
use crate::error::Error;
use crate::grid::{Grid, GuardBand, WaveFunction};
use crate::invariance::{
    ehrenfest_decomposition, expectation_series, verify_cyclic_special_case, verify_with_tolerance, CyclicCaseOutcome,
    TransformationReport,
};
use crate::phases::{angle_distance, aw_phase, geodesic_closure_phase, phase_report, PhaseReport};
use crate::states::{self, CoherentState};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config parse error: {0}")]
    Parse(String),

    #[error("invalid config: {0}")]
    Invalid(String),

    #[error("infeasible scenario: {0}")]
    Infeasible(String),

    #[error(transparent)]
    Physics(#[from] Error),
}

impl ScenarioError {
    /// 2 for unreadable or invalid configs, 3 for physics-domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            ScenarioError::Read { .. } | ScenarioError::Parse(_) | ScenarioError::Invalid(_) => 2,
            ScenarioError::Infeasible(_) | ScenarioError::Physics(_) => 3,
            ScenarioError::Write { .. } => 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_name")]
    pub name: String,
    pub grid: GridConfig,
    #[serde(default)]
    pub units: UnitsConfig,
    #[serde(default)]
    pub system: SystemConfig,
    pub initial_state: InitialStateConfig,
    pub evolution: EvolutionConfig,
    #[serde(default)]
    pub boost: BoostConfig,
    #[serde(default)]
    pub checks: ChecksConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
}

fn default_name() -> String {
    "scenario".into()
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_points: usize,
    pub x_min: f64,
    pub dx: f64,
    #[serde(default = "default_guard_fraction")]
    pub guard_fraction: f64,
    #[serde(default = "default_guard_probability")]
    pub guard_probability: f64,
}

fn default_guard_fraction() -> f64 {
    GuardBand::default().fraction
}

fn default_guard_probability() -> f64 {
    GuardBand::default().max_probability
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub m: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for UnitsConfig {
    fn default() -> Self {
        UnitsConfig { hbar: 1.0, m: 1.0 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialConfig {
    Free,
    Harmonic { omega: f64 },
    Polynomial { coefficients: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    #[serde(default = "free_potential")]
    pub potential: PotentialConfig,
    /// Constant, spatially uniform `A_x`.
    #[serde(default)]
    pub vector_potential: f64,
}

fn free_potential() -> PotentialConfig {
    PotentialConfig::Free
}

impl Default for SystemConfig {
    fn default() -> Self {
        SystemConfig {
            potential: PotentialConfig::Free,
            vector_potential: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialStateConfig {
    Gaussian {
        center: f64,
        width: f64,
        #[serde(default)]
        momentum: f64,
    },
    Coherent {
        alpha: f64,
        #[serde(default)]
        alpha_im: f64,
        omega: f64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct EvolutionConfig {
    pub t_final: f64,
    pub n_steps: usize,
    #[serde(default = "one_usize")]
    pub sample_every: usize,
}

fn one_usize() -> usize {
    1
}

#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BoostConfig {
    #[serde(default)]
    pub velocities: Vec<f64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, Hash)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    OperatorTransforms,
    Ehrenfest,
    TransformationLaw,
    GaugeSplit,
    CyclicCase,
    GeodesicClosure,
    Reparametrization,
    GaugeSensitivity,
}

impl CheckName {
    pub const ALL: [CheckName; 8] = [
        CheckName::OperatorTransforms,
        CheckName::Ehrenfest,
        CheckName::TransformationLaw,
        CheckName::GaugeSplit,
        CheckName::CyclicCase,
        CheckName::GeodesicClosure,
        CheckName::Reparametrization,
        CheckName::GaugeSensitivity,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::OperatorTransforms => "operator_transforms",
            CheckName::Ehrenfest => "ehrenfest",
            CheckName::TransformationLaw => "transformation_law",
            CheckName::GaugeSplit => "gauge_split",
            CheckName::CyclicCase => "cyclic_case",
            CheckName::GeodesicClosure => "geodesic_closure",
            CheckName::Reparametrization => "reparametrization",
            CheckName::GaugeSensitivity => "gauge_sensitivity",
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ChecksConfig {
    #[serde(default = "all_checks")]
    pub enabled: Vec<CheckName>,
    #[serde(default = "default_n_geodesic")]
    pub n_geodesic: usize,
    /// Slope of the time-dependent gauge `f(x, t) = lambda x t`.
    #[serde(default = "default_gauge_lambda")]
    pub gauge_lambda: f64,
}

fn all_checks() -> Vec<CheckName> {
    CheckName::ALL.to_vec()
}

fn default_n_geodesic() -> usize {
    64
}

fn default_gauge_lambda() -> f64 {
    0.3
}

impl Default for ChecksConfig {
    fn default() -> Self {
        ChecksConfig {
            enabled: all_checks(),
            n_geodesic: default_n_geodesic(),
            gauge_lambda: default_gauge_lambda(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub cyclic: f64,
    pub operator_transforms: f64,
    pub ehrenfest: f64,
    pub transformation_law: f64,
    pub gauge_split: f64,
    pub cyclic_case: f64,
    pub geodesic_closure: f64,
    pub reparametrization: f64,
    /// Smallest change of the AW phase that counts as gauge sensitivity.
    pub gauge_min_change: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            cyclic: crate::phases::DEFAULT_CYCLIC_TOLERANCE,
            operator_transforms: 1e-8,
            ehrenfest: 1e-4,
            transformation_law: 1e-6,
            gauge_split: 1e-5,
            cyclic_case: 1e-5,
            geodesic_closure: 1e-6,
            reparametrization: 1e-9,
            gauge_min_change: 0.01,
        }
    }
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ScenarioError> {
        let config: ScenarioConfig = toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ScenarioError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    /// Parameter checks that need no physics.
    pub fn validate(&self) -> Result<(), ScenarioError> {
        let invalid = |msg: String| Err(ScenarioError::Invalid(msg));
        let g = &self.grid;
        if g.n_points < 8 {
            return invalid(format!("grid.n_points = {} must be at least 8", g.n_points));
        }
        if !(g.dx > 0.0) || !g.x_min.is_finite() {
            return invalid("grid.dx must be positive and grid.x_min finite".into());
        }
        if !(0.0..0.5).contains(&g.guard_fraction) {
            return invalid("grid.guard_fraction must lie in [0, 0.5)".into());
        }
        if !(self.units.hbar > 0.0) || !(self.units.m > 0.0) {
            return invalid("units.hbar and units.m must be positive".into());
        }
        if let PotentialConfig::Harmonic { omega } = self.system.potential {
            if !(omega > 0.0) {
                return invalid("harmonic omega must be positive".into());
            }
        }
        match self.initial_state {
            InitialStateConfig::Gaussian { width, .. } if !(width > 0.0) => {
                return invalid("gaussian width must be positive".into())
            }
            InitialStateConfig::Coherent { omega, .. } if !(omega > 0.0) => {
                return invalid("coherent omega must be positive".into())
            }
            _ => {}
        }
        let e = &self.evolution;
        if !(e.t_final >= 0.0) || e.n_steps == 0 || e.sample_every == 0 {
            return invalid("evolution needs t_final >= 0, n_steps >= 1, sample_every >= 1".into());
        }
        if self.boost.velocities.iter().any(|v| !v.is_finite()) {
            return invalid("boost velocities must be finite".into());
        }
        if self.checks.n_geodesic == 0 {
            return invalid("checks.n_geodesic must be >= 1".into());
        }
        let mut seen = std::collections::HashSet::new();
        for c in &self.checks.enabled {
            if !seen.insert(*c) {
                return invalid(format!("check {} listed twice", c.as_str()));
            }
        }
        Ok(())
    }

    pub fn build_grid(&self) -> Result<Arc<Grid>, ScenarioError> {
        let g = &self.grid;
        Grid::builder(g.n_points, g.x_min, g.dx)
            .hbar(self.units.hbar)
            .guard(Some(GuardBand {
                fraction: g.guard_fraction,
                max_probability: g.guard_probability,
            }))
            .build()
            .map_err(|e| ScenarioError::Invalid(e.to_string()))
    }

    pub fn build_hamiltonian(&self) -> Result<Arc<HamiltonianSpec>, ScenarioError> {
        let potential = match &self.system.potential {
            PotentialConfig::Free => Potential::Free,
            PotentialConfig::Harmonic { omega } => Potential::Harmonic { omega: *omega },
            PotentialConfig::Polynomial { coefficients } => Potential::Polynomial(coefficients.clone()),
        };
        let a = if self.system.vector_potential == 0.0 {
            VectorPotential::Zero
        } else {
            VectorPotential::Constant(self.system.vector_potential)
        };
        let h = HamiltonianSpec::new(self.units.m, self.units.hbar, potential, a)
            .map_err(|e| ScenarioError::Invalid(e.to_string()))?;
        Ok(Arc::new(h.with_label(self.name.clone())))
    }

    pub fn build_initial_state(&self, grid: Arc<Grid>) -> Result<WaveFunction, ScenarioError> {
        let psi = match self.initial_state {
            InitialStateConfig::Gaussian {
                center,
                width,
                momentum,
            } => states::gaussian(grid, center, width, momentum),
            InitialStateConfig::Coherent { alpha, alpha_im, omega } => CoherentState {
                alpha: Complex64::new(alpha, alpha_im),
                omega,
                mass: self.units.m,
            }
            .wave_function(grid),
        };
        psi.map_err(|e| ScenarioError::Invalid(e.to_string()))
    }

    /// Conservative envelope of where the packet can be in either frame,
    /// checked against the guard band before any evolution.
    pub fn check_feasibility(&self) -> Result<(), ScenarioError> {
        let hbar = self.units.hbar;
        let m = self.units.m;
        let t = self.evolution.t_final;
        let a = self.system.vector_potential;
        let (x0, p0, w0) = match self.initial_state {
            InitialStateConfig::Gaussian {
                center,
                width,
                momentum,
            } => (center, momentum, width),
            InitialStateConfig::Coherent { alpha, alpha_im, omega } => {
                let c = CoherentState {
                    alpha: Complex64::new(alpha, alpha_im),
                    omega,
                    mass: m,
                };
                (c.center(hbar), c.momentum(hbar), c.width(hbar))
            }
        };
        let (c_lo, c_hi, width) = match self.system.potential {
            PotentialConfig::Free => {
                let end = x0 + (p0 - a) * t / m;
                let spread = w0 * (1.0 + (hbar * t / (2.0 * m * w0 * w0)).powi(2)).sqrt();
                (x0.min(end), x0.max(end), spread)
            }
            PotentialConfig::Harmonic { omega } => {
                let amp = (x0 * x0 + ((p0 - a) / (m * omega)).powi(2)).sqrt();
                let squeezed = hbar / (2.0 * m * omega * w0);
                (-amp, amp, w0.max(squeezed))
            }
            PotentialConfig::Polynomial { .. } => (x0, x0, w0),
        };
        let v_max = self.boost.velocities.iter().fold(0.0_f64, |m, &v| m.max(v));
        let v_min = self.boost.velocities.iter().fold(0.0_f64, |m, &v| m.min(v));
        let lo = c_lo - 6.0 * width - v_max * t;
        let hi = c_hi + 6.0 * width - v_min * t;
        let length = self.grid.n_points as f64 * self.grid.dx;
        let band = self.grid.guard_fraction * length;
        let inner_lo = self.grid.x_min + band;
        let inner_hi = self.grid.x_min + length - band;
        if lo < inner_lo || hi > inner_hi {
            return Err(ScenarioError::Infeasible(format!(
                "packet envelope [{lo:.3}, {hi:.3}] (including max|v| T = {:.3} and 6 widths) \
                 exceeds the guard-band interior [{inner_lo:.3}, {inner_hi:.3}]",
                v_max.max(-v_min) * t
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub detail: String,
}

impl CheckResult {
    fn below(name: CheckName, residual: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.as_str().into(),
            status: if residual < tolerance {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            residual: Some(residual),
            tolerance: Some(tolerance),
            detail: detail.into(),
        }
    }

    fn not_applicable(name: CheckName, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.as_str().into(),
            status: CheckStatus::NotApplicable,
            residual: None,
            tolerance: None,
            detail: detail.into(),
        }
    }
}

/// One row per lab-frame sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct TimeSeriesRow {
    pub t: f64,
    pub expect_q: f64,
    pub expect_p: f64,
    pub delta_eta: f64,
    pub eta_accumulated: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RuntimeInfo {
    pub elapsed_seconds: f64,
    pub threads: usize,
    pub version: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub scenario: String,
    pub all_passed: bool,
    pub samples: usize,
    pub lab: PhaseReport,
    pub checks: Vec<CheckResult>,
    pub transformations: Vec<TransformationReport>,
    pub config: ScenarioConfig,
    pub runtime: RuntimeInfo,
    #[serde(skip)]
    pub timeseries: Vec<TimeSeriesRow>,
}

impl RunReport {
    /// 0 when every applicable check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed {
            0
        } else {
            1
        }
    }
}

fn warp_cubic(t0: f64, duration: f64) -> impl Fn(f64) -> f64 {
    let scale = if duration > 0.0 { duration } else { 1.0 };
    move |t| {
        let s = (t - t0) / scale;
        t0 + scale * (s + s * s * s)
    }
}

/// Deterministic per-sample phases with consecutive jumps below pi/8.
fn lift_phases(n: usize) -> Vec<f64> {
    (0..n).map(|k| 0.18 * (0.7 * (k * k) as f64).sin()).collect()
}

fn timeseries(traj: &Trajectory, per_step: &[f64]) -> Result<Vec<TimeSeriesRow>, Error> {
    let (q, p) = expectation_series(traj)?;
    let mut acc = 0.0;
    Ok(traj
        .times()
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            let delta_eta = if k == 0 { 0.0 } else { per_step[k - 1] };
            acc += delta_eta;
            TimeSeriesRow {
                t,
                expect_q: q[k],
                expect_p: p[k],
                delta_eta,
                eta_accumulated: acc,
            }
        })
        .collect())
}

/// Runs every requested check of a validated scenario.
pub fn run_scenario(config: &ScenarioConfig) -> Result<RunReport, ScenarioError> {
    let started = Instant::now();
    config.validate()?;
    config.check_feasibility()?;
    let grid = config.build_grid()?;
    let h = config.build_hamiltonian()?;
    let psi0 = config.build_initial_state(grid)?;
    let evo = &config.evolution;
    let tol = &config.tolerances;

    let traj = evolve(&psi0, &h, evo.t_final, evo.n_steps, evo.sample_every)?;
    let lab = phase_report(&traj, tol.cyclic)?;
    let series = timeseries(&traj, &lab.per_step_phases)?;

    let boosts: Vec<BoostParams> = config
        .boost
        .velocities
        .iter()
        .map(|&v| BoostParams::new(v, config.units.m, config.units.hbar))
        .collect::<Result<_, _>>()?;
    let transformations: Vec<TransformationReport> = boosts
        .par_iter()
        .map(|b| verify_with_tolerance(&traj, b, tol.cyclic))
        .collect::<Result<_, _>>()?;

    let mut checks = Vec::new();
    for &name in &config.checks.enabled {
        checks.push(run_check(name, config, &traj, &lab, &boosts, &transformations)?);
    }
    let all_passed = checks.iter().all(|c| c.status != CheckStatus::Fail);

    Ok(RunReport {
        scenario: config.name.clone(),
        all_passed,
        samples: traj.len(),
        lab,
        checks,
        transformations,
        config: config.clone(),
        runtime: RuntimeInfo {
            elapsed_seconds: started.elapsed().as_secs_f64(),
            threads: rayon::current_num_threads(),
            version: env!("CARGO_PKG_VERSION").into(),
        },
        timeseries: series,
    })
}

fn max_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    values.fold(None, |m, x| Some(m.map_or(x, |m: f64| m.max(x))))
}

fn run_check(
    name: CheckName,
    config: &ScenarioConfig,
    traj: &Trajectory,
    lab: &PhaseReport,
    boosts: &[BoostParams],
    reports: &[TransformationReport],
) -> Result<CheckResult, Error> {
    let tol = &config.tolerances;
    let no_boosts = || CheckResult::not_applicable(name, "no boost velocities configured");
    Ok(match name {
        CheckName::OperatorTransforms => {
            if boosts.is_empty() {
                return Ok(no_boosts());
            }
            let picks = [0, traj.len() / 2, traj.len() - 1];
            let mut worst = (0.0_f64, 0.0_f64);
            for b in boosts {
                for &k in &picks {
                    let s = &traj.states()[k];
                    let r = check_operator_transforms(s, s.time(), b)?;
                    worst = (worst.0.max(r.position), worst.1.max(r.momentum));
                }
            }
            CheckResult::below(
                name,
                worst.0.max(worst.1),
                tol.operator_transforms,
                format!("max r_Q = {:.3e}, max r_P = {:.3e}", worst.0, worst.1),
            )
        }
        CheckName::Ehrenfest => {
            if traj.len() < 3 {
                return Ok(CheckResult::not_applicable(name, "fewer than 3 samples"));
            }
            let profile = ehrenfest_decomposition(traj)?;
            CheckResult::below(
                name,
                profile.max_abs,
                tol.ehrenfest,
                "max interior |<P> - A - m d<Q>/dt|",
            )
        }
        CheckName::TransformationLaw => match max_of(reports.iter().map(|r| r.residual_law)) {
            Some(r) => CheckResult::below(name, r, tol.transformation_law, "max over velocities"),
            None => no_boosts(),
        },
        CheckName::GaugeSplit => match max_of(reports.iter().filter_map(|r| r.residual_gauge_split)) {
            Some(r) => CheckResult::below(name, r, tol.gauge_split, "max over velocities"),
            None => no_boosts(),
        },
        CheckName::CyclicCase => {
            if boosts.is_empty() {
                return Ok(no_boosts());
            }
            let mut worst: Option<(f64, f64)> = None;
            let mut reason = String::new();
            for b in boosts {
                match verify_cyclic_special_case(traj, b, tol.cyclic)? {
                    CyclicCaseOutcome::Applicable {
                        residual,
                        displacement_check,
                    } => {
                        let (r, d) = worst.unwrap_or((0.0, 0.0));
                        worst = Some((r.max(residual), d.max(displacement_check)));
                    }
                    CyclicCaseOutcome::NotApplicable { reason: why } => reason = why,
                }
            }
            match worst {
                Some((r, d)) => {
                    let mut result = CheckResult::below(
                        name,
                        r,
                        tol.cyclic_case,
                        format!("displacement-only check {d:.3e} (limit 1e-10)"),
                    );
                    if d >= 1e-10 {
                        result.status = CheckStatus::Fail;
                    }
                    result
                }
                None => CheckResult::not_applicable(name, reason),
            }
        }
        CheckName::GeodesicClosure => {
            let closed = geodesic_closure_phase(traj, config.checks.n_geodesic)?;
            CheckResult::below(
                name,
                angle_distance(closed, lab.aw_phase),
                tol.geodesic_closure,
                format!("n_geodesic = {}", config.checks.n_geodesic),
            )
        }
        CheckName::Reparametrization => {
            let t0 = traj.first().time();
            let warped = traj.reparametrized(warp_cubic(t0, traj.duration()))?;
            let lifted = traj.phase_lifted(&lift_phases(traj.len()))?.without_hamiltonian();
            let d_warp = angle_distance(aw_phase(&warped)?, lab.aw_phase);
            let d_lift = angle_distance(aw_phase(&lifted)?, lab.aw_phase);
            CheckResult::below(
                name,
                d_warp.max(d_lift),
                tol.reparametrization,
                format!("cubic warp {d_warp:.3e}, phase lift {d_lift:.3e}"),
            )
        }
        CheckName::GaugeSensitivity => {
            let lambda = config.checks.gauge_lambda;
            let t0 = traj.first().time();
            let gauged = gauge_transform(traj, |x, t| lambda * x * (t - t0));
            let change = angle_distance(aw_phase(&gauged)?, lab.aw_phase);
            CheckResult {
                name: name.as_str().into(),
                status: if change > tol.gauge_min_change {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                residual: Some(change),
                tolerance: Some(tol.gauge_min_change),
                detail: format!("|delta gAW| under f = {lambda} x t must exceed the tolerance"),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
[grid]
n_points = 128
x_min = -15.0
dx = 0.234375

[initial_state]
kind = "gaussian"
center = 0.0
width = 1.0

[evolution]
t_final = 1.0
n_steps = 200
"#;

    #[test]
    fn defaults_fill_optional_blocks() {
        let c = ScenarioConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(c.name, "scenario");
        assert_eq!(c.units, UnitsConfig::default());
        assert_eq!(c.system.potential, PotentialConfig::Free);
        assert_eq!(c.evolution.sample_every, 1);
        assert_eq!(c.checks.enabled.len(), CheckName::ALL.len());
        assert!(c.boost.velocities.is_empty());
        assert_eq!(c.grid.guard_fraction, 0.05);
    }

    #[test]
    fn invalid_values_are_rejected() {
        let bad = [
            ("n_points = 128", "n_points = 7"),
            ("dx = 0.234375", "dx = 0.0"),
            ("width = 1.0", "width = -1.0"),
            ("n_steps = 200", "n_steps = 0"),
            ("t_final = 1.0", "t_final = -1.0"),
        ];
        for (from, to) in bad {
            let err = ScenarioConfig::from_toml(&MINIMAL.replace(from, to)).unwrap_err();
            assert!(matches!(err, ScenarioError::Invalid(_)), "{to}: {err}");
            assert_eq!(err.exit_code(), 2);
        }
        let duplicate = format!("{MINIMAL}\n[checks]\nenabled = [\"gauge_split\", \"gauge_split\"]\n");
        assert!(matches!(
            ScenarioConfig::from_toml(&duplicate),
            Err(ScenarioError::Invalid(_))
        ));
        let unknown_key = format!("{MINIMAL}\n[units]\nhbarr = 1.0\n");
        assert!(matches!(
            ScenarioConfig::from_toml(&unknown_key),
            Err(ScenarioError::Parse(_))
        ));
    }

    #[test]
    fn feasibility_accounts_for_boost_displacement() {
        let mut c = ScenarioConfig::from_toml(MINIMAL).unwrap();
        c.boost.velocities = vec![1.0, -1.0];
        c.check_feasibility().unwrap();
        c.boost.velocities = vec![-8.0];
        let err = c.check_feasibility().unwrap_err();
        assert!(matches!(err, ScenarioError::Infeasible(_)));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn checks_without_boosts_are_not_applicable() {
        let c = ScenarioConfig::from_toml(MINIMAL).unwrap();
        let report = run_scenario(&c).unwrap();
        assert_eq!(report.checks.len(), CheckName::ALL.len());
        for check in &report.checks {
            let needs_boost = [
                "operator_transforms",
                "transformation_law",
                "gauge_split",
                "cyclic_case",
            ]
            .contains(&check.name.as_str());
            if needs_boost {
                assert_eq!(check.status, CheckStatus::NotApplicable, "{}", check.name);
            } else {
                assert_eq!(check.status, CheckStatus::Pass, "{}: {}", check.name, check.detail);
            }
        }
        assert!(report.all_passed && report.exit_code() == 0);
        assert_eq!(report.timeseries.len(), report.samples);
    }

    #[test]
    fn lift_phases_stay_below_an_eighth_turn() {
        let chi = lift_phases(500);
        assert!(chi.windows(2).all(|w| (w[1] - w[0]).abs() < std::f64::consts::PI / 8.0));
    }
}
