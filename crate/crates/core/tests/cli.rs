use std::path::{Path, PathBuf};
use std::process::Command;

use geophase::scenario::{run_scenario, ScenarioConfig};

const SMALL_SHO: &str = r#"
name = "small_sho"

[grid]
n_points = 128
x_min = -12.0
dx = 0.1875

[system.potential]
kind = "harmonic"
omega = 1.0

[initial_state]
kind = "coherent"
alpha = 0.5
omega = 1.0

[evolution]
t_final = 6.283185307179586
n_steps = 1024
sample_every = 2

[boost]
velocities = [0.0, 0.3]
"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_geophase"))
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let path = dir.join("scenario.cfg");
    std::fs::write(&path, text).unwrap();
    path
}

fn run(config: &Path, out: &Path, extra: &[&str]) -> i32 {
    bin()
        .arg("run")
        .arg(config)
        .arg("--out")
        .arg(out)
        .args(extra)
        .output()
        .unwrap()
        .status
        .code()
        .unwrap()
}

fn without_runtime(report: &str) -> String {
    report.split("[runtime]").next().unwrap().to_string()
}

#[test]
fn runs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_SHO);
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    assert_eq!(run(&cfg, &a, &["--jobs", "1"]), 0);
    assert_eq!(run(&cfg, &b, &["--jobs", "3"]), 0);
    let ra = std::fs::read_to_string(a.join("report.toml")).unwrap();
    let rb = std::fs::read_to_string(b.join("report.toml")).unwrap();
    assert_eq!(without_runtime(&ra), without_runtime(&rb));
    assert_eq!(
        std::fs::read(a.join("timeseries.csv")).unwrap(),
        std::fs::read(b.join("timeseries.csv")).unwrap()
    );
}

#[test]
fn csv_has_one_row_per_sample_and_accumulates_dynamic_phase() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_SHO);
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &["--format", "csv"]), 0);
    assert!(!out.join("report.toml").exists());

    let report = run_scenario(&ScenarioConfig::from_toml(SMALL_SHO).unwrap()).unwrap();
    let mut reader = csv::Reader::from_path(out.join("timeseries.csv")).unwrap();
    assert_eq!(
        reader.headers().unwrap(),
        vec!["t", "expect_q", "expect_p", "delta_eta", "eta_accumulated"]
    );
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), report.samples);
    assert_eq!(rows.len(), 513);
    let sum: f64 = rows.iter().map(|r| r[3].parse::<f64>().unwrap()).sum();
    let last: f64 = rows.last().unwrap()[4].parse().unwrap();
    assert!((sum - report.lab.dynamic_phase).abs() < 1e-10);
    assert!((last - report.lab.dynamic_phase).abs() < 1e-10);
}

#[test]
fn config_survives_serialization() {
    let config = ScenarioConfig::from_toml(SMALL_SHO).unwrap();
    let text = toml::to_string(&config).unwrap();
    assert_eq!(ScenarioConfig::from_toml(&text).unwrap(), config);
}

#[test]
fn report_echoes_config_and_lists_each_check_once() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), SMALL_SHO);
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &[]), 0);
    let value: toml::Table = std::fs::read_to_string(out.join("report.toml"))
        .unwrap()
        .parse()
        .unwrap();
    let checks = value["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 8);
    let cyclic = checks
        .iter()
        .find(|c| c["name"].as_str() == Some("cyclic_case"))
        .unwrap();
    assert_eq!(cyclic["status"].as_str(), Some("pass"));
    let echoed: ScenarioConfig = value["config"].clone().try_into().unwrap();
    assert_eq!(echoed, ScenarioConfig::from_toml(SMALL_SHO).unwrap());
}

#[test]
fn tiny_grid_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &SMALL_SHO.replace("n_points = 128", "n_points = 4"));
    assert_eq!(run(&cfg, &dir.path().join("out"), &[]), 2);
}

#[test]
fn unknown_check_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{SMALL_SHO}\n[checks]\nenabled = [\"gauge_split\", \"berry_curvature\"]\n");
    let cfg = write_config(dir.path(), &text);
    assert_eq!(run(&cfg, &dir.path().join("out"), &[]), 2);
}

#[test]
fn missing_config_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&dir.path().join("nope.cfg"), &dir.path().join("out"), &[]), 2);
}

#[test]
fn boost_beyond_guard_band_is_a_physics_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), &SMALL_SHO.replace("[0.0, 0.3]", "[2.0]"));
    assert_eq!(run(&cfg, &dir.path().join("out"), &[]), 3);
}

#[test]
fn failed_check_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = format!("{SMALL_SHO}\n[tolerances]\nreparametrization = 0.0\n");
    let cfg = write_config(dir.path(), &text);
    let out = dir.path().join("out");
    assert_eq!(run(&cfg, &out, &[]), 1);
    let report = std::fs::read_to_string(out.join("report.toml")).unwrap();
    assert!(report.contains("all_passed = false"));
}

#[test]
fn bundled_scenarios_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut count = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let config = ScenarioConfig::load(&path).unwrap();
        config.check_feasibility().unwrap();
        count += 1;
    }
    assert!(count >= 3);
}
