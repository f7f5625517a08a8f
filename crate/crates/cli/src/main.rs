mod commands;
mod config;
mod dataset;
mod error;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::config::{split, CommonConfig};
use crate::dataset::{Dataset, Format};
use crate::error::CliError;
use nonrecip_core::selftest::Status;

/// Heat radiation, persistent currents and plate forces for magneto-optical nanoparticles.
#[derive(Debug, Parser)]
#[command(name = "nonrecip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output file; defaults to `output.path` in the config, then stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Worker threads; results do not depend on this.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Overrides `quadrature.rel_tol`.
    #[arg(long, global = true)]
    quad_rel_tol: Option<f64>,
}

#[derive(Clone, Copy, Debug, Subcommand)]
enum Command {
    /// Self emission of particle 2 next to particle 1 versus the isolated value.
    Emission,
    /// Net heat current between two particles at a common temperature.
    Persistent,
    /// Force on a particle above a plate, or the mirror toy curve.
    Force,
    /// Per-frequency check of the force bound.
    Bound,
    /// Randomized internal consistency checks.
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let (common, rest) = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
                path: path.clone(),
                source,
            })?;
            split(&text)?
        }
        None => (CommonConfig::default(), Value::Object(Default::default())),
    };
    let mut quad = common.quadrature.unwrap_or_default();
    if let Some(tol) = cli.quad_rel_tol {
        quad = quad.with_rel_tol(tol);
    }
    quad.validate()
        .map_err(|e| CliError::config("quadrature", e.to_string()))?;

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::config("--jobs", "must be at least 1"));
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().map_err(|e| CliError::config("--jobs", e.to_string()))?;

    let mut failed_rows = 0;
    let data = pool.install(|| -> Result<Dataset, CliError> {
        match cli.command {
            Command::Emission => commands::emission::run(rest, &quad),
            Command::Persistent => commands::persistent::run(rest, &quad),
            Command::Force => commands::force::run(rest, &quad),
            Command::Bound => commands::bound::run(rest, &quad),
            Command::Selftest => {
                let (data, report) = commands::selftest::run(rest, &quad)?;
                eprint!("{}", commands::selftest::render_table(&report));
                failed_rows = report.rows.len() - report.rows.iter().filter(|r| r.status == Status::Pass).count();
                Ok(data)
            }
        }
    })?;

    let format = cli.format.or(common.output.format).unwrap_or_default();
    match cli.out.as_ref().or(common.output.path.as_ref()) {
        Some(path) => {
            let mut out = BufWriter::new(File::create(path)?);
            data.write(format, &mut out)?;
            out.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            data.write(format, &mut out)?;
            out.flush()?;
        }
    }
    if failed_rows > 0 {
        return Err(CliError::SelftestFailed { failed: failed_rows });
    }
    Ok(())
}
