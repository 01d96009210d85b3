use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geophase::report::{summary, write_outputs, OutputFormat};
use geophase::scenario::{run_scenario, ScenarioConfig};

#[derive(Parser)]
#[command(name = "geophase", version, about = "Geometric phases under Galilean boosts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and write its report.
    Run {
        config: PathBuf,
        #[arg(long, default_value = "geophase-out")]
        out: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "text,csv")]
        format: Vec<OutputFormat>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        verbose: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let Command::Run {
        config,
        out,
        format,
        jobs,
        verbose,
    } = cli.command;

    env_logger::Builder::new()
        .filter_level(if verbose {
            log::LevelFilter::Debug
        } else {
            log::LevelFilter::Warn
        })
        .parse_default_env()
        .init();

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let result = ScenarioConfig::load(&config).and_then(|cfg| pool.install(|| run_scenario(&cfg)));
    let report = match result {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    print!("{}", summary(&report));
    match write_outputs(&report, &out, &format) {
        Ok(paths) => {
            for p in paths {
                log::info!("wrote {}", p.display());
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    }
    ExitCode::from(report.exit_code() as u8)
}
