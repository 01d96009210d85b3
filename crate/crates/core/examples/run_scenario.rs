//! Runs a bundled scenario file through the library and prints the summary.
//!
//! `cargo run --release --example run_scenario -- scenarios/sho_coherent.cfg`

use geophase::report::summary;
use geophase::scenario::{run_scenario, ScenarioConfig};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/sho_coherent.cfg").into());
    let outcome = ScenarioConfig::load(&path).and_then(|c| run_scenario(&c));
    match outcome {
        Ok(report) => print!("{}", summary(&report)),
        Err(e) => {
            eprintln!("{path}: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
