//! Writing a [`RunReport`] to disk and to the terminal.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::scenario::{CheckStatus, RunReport, ScenarioError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    /// `report.toml`
    Text,
    /// `timeseries.csv`
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format `{other}` (expected text or csv)")),
        }
    }
}

pub const REPORT_FILE: &str = "report.toml";
pub const TIMESERIES_FILE: &str = "timeseries.csv";

fn write_err(path: &Path) -> impl FnOnce(std::io::Error) -> ScenarioError + '_ {
    move |source| ScenarioError::Write {
        path: path.to_path_buf(),
        source,
    }
}

pub fn to_toml(report: &RunReport) -> Result<String, ScenarioError> {
    toml::to_string(report).map_err(|e| ScenarioError::Write {
        path: PathBuf::from(REPORT_FILE),
        source: std::io::Error::other(e),
    })
}

pub fn write_timeseries(report: &RunReport, path: &Path) -> Result<(), ScenarioError> {
    let to_io = |e: csv::Error| std::io::Error::other(e);
    let mut w = csv::Writer::from_path(path).map_err(|e| write_err(path)(to_io(e)))?;
    for row in &report.timeseries {
        w.serialize(row).map_err(|e| write_err(path)(to_io(e)))?;
    }
    w.flush().map_err(write_err(path))
}

/// Writes the requested files into `out_dir`, creating it if needed.
pub fn write_outputs(
    report: &RunReport,
    out_dir: &Path,
    formats: &[OutputFormat],
) -> Result<Vec<PathBuf>, ScenarioError> {
    std::fs::create_dir_all(out_dir).map_err(write_err(out_dir))?;
    let mut written = Vec::new();
    for format in formats {
        let path = match format {
            OutputFormat::Text => {
                let path = out_dir.join(REPORT_FILE);
                std::fs::write(&path, to_toml(report)?).map_err(write_err(&path))?;
                path
            }
            OutputFormat::Csv => {
                let path = out_dir.join(TIMESERIES_FILE);
                write_timeseries(report, &path)?;
                path
            }
        };
        if !written.contains(&path) {
            written.push(path);
        }
    }
    Ok(written)
}

fn status_label(s: CheckStatus) -> &'static str {
    match s {
        CheckStatus::Pass => "PASS",
        CheckStatus::Fail => "FAIL",
        CheckStatus::NotApplicable => "N/A ",
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".into(), |x| format!("{x:.6}"))
}

/// Human-readable summary for stdout.
pub fn summary(report: &RunReport) -> String {
    let mut s = String::new();
    let lab = &report.lab;
    let _ = writeln!(s, "scenario {} ({} samples)", report.scenario, report.samples);
    let _ = writeln!(
        s,
        "  total {:.6}  dynamic {:.6}  AW {:.6}  AA {}  defect {:.3e}",
        lab.total_phase,
        lab.dynamic_phase,
        lab.aw_phase,
        opt(lab.aa_phase),
        lab.cyclicity_defect
    );
    for t in &report.transformations {
        let _ = writeln!(
            s,
            "  v = {:<6} AW~ {:.6}  gap {:.6}  law {:.2e}  split {}  cyclic {}",
            t.velocity,
            t.gamma_aw_boosted,
            t.non_invariance_gap,
            t.residual_law,
            t.residual_gauge_split.map_or("-".into(), |r| format!("{r:.2e}")),
            t.residual_cyclic.map_or("-".into(), |r| format!("{r:.2e}")),
        );
    }
    for c in &report.checks {
        let _ = writeln!(
            s,
            "  [{}] {:<20} residual {:>10}  tolerance {:>10}  {}",
            status_label(c.status),
            c.name,
            c.residual.map_or("-".into(), |r| format!("{r:.3e}")),
            c.tolerance.map_or("-".into(), |r| format!("{r:.1e}")),
            c.detail
        );
    }
    let _ = writeln!(
        s,
        "{}",
        if report.all_passed {
            "all checks passed"
        } else {
            "checks FAILED"
        }
    );
    s
}
