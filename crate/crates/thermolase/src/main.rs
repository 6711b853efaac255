//! Command-line front end: single trials, sweeps, and focus tables.
//!
//! Exit codes: 0 success, 2 configuration error, 3 numerical failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use thermolase::config::{SimulateFile, SweepFile};
use thermolase::harness::{
    self, run_sweep, run_trial, ConditionResult, TrialSummary, WM2_TO_WCM2,
};
use thermolase::optics::BeamSpec;
use thermolase::{Error, Result};

const SERIES_SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "thermolase", version, about = "Adaptive laser-defocus temperature control, simulated")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single closed-loop trial from a config file.
    Simulate {
        /// Path to the TOML run configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
        /// Override the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every condition of a sweep config and aggregate RMSE statistics.
    Sweep {
        /// Path to the TOML sweep configuration.
        #[arg(long)]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a CSV table of spot radius and peak intensity versus focal distance.
    SpotTable {
        #[arg(long)]
        wavelength_um: f64,
        #[arg(long)]
        waist_mm: f64,
        #[arg(long)]
        power_w: f64,
        #[arg(long)]
        max_df_mm: f64,
        #[arg(long)]
        step_mm: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_thread_pool();
    let outcome = match cli.command {
        Command::Simulate { config, out, seed } => cmd_simulate(&config, &out, seed),
        Command::Sweep { config, out } => cmd_sweep(&config, &out),
        Command::SpotTable {
            wavelength_um,
            waist_mm,
            power_w,
            max_df_mm,
            step_mm,
        } => cmd_spot_table(wavelength_um, waist_mm, power_w, max_df_mm, step_mm),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Config(_) | Error::Domain { .. } => ExitCode::from(2),
                Error::NumericalBlowup => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

/// `THERMOLASE_THREADS` caps sweep concurrency; unset means rayon's default.
fn configure_thread_pool() {
    if let Ok(value) = std::env::var("THERMOLASE_THREADS") {
        if let Ok(n) = value.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

#[derive(serde::Serialize)]
struct Manifest<'a> {
    tool_version: &'a str,
    command: &'a str,
    config_path: String,
    output_dir: String,
    resolved_seed: u64,
    series_schema_version: u32,
    series_columns: &'a str,
    timestamp_utc: String,
}

fn write_manifest(
    dir: &Path,
    command: &str,
    config_path: &Path,
    seed: u64,
) -> Result<()> {
    let manifest = Manifest {
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        config_path: config_path.display().to_string(),
        output_dir: dir.display().to_string(),
        resolved_seed: seed,
        series_schema_version: SERIES_SCHEMA_VERSION,
        series_columns: harness::SERIES_COLUMNS,
        timestamp_utc: chrono::Utc::now().to_rfc3339(),
    };
    let text = serde_json::to_string_pretty(&manifest)
        .map_err(|e| Error::Config(format!("manifest serialization: {e}")))?;
    write_file(&dir.join("manifest.json"), text.as_bytes())
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display())))
}

fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path)
        .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))
}

fn write_trial_artifacts(dir: &Path, summary: &TrialSummary, result: &harness::TrialResult) -> Result<()> {
    create_dir(dir)?;
    let mut csv = Vec::new();
    harness::write_series_csv(result, &mut csv)
        .map_err(|e| Error::Config(format!("series serialization: {e}")))?;
    write_file(&dir.join("series.csv"), &csv)?;
    let json = serde_json::to_string_pretty(summary)
        .map_err(|e| Error::Config(format!("summary serialization: {e}")))?;
    write_file(&dir.join("summary.json"), json.as_bytes())
}

fn cmd_simulate(config_path: &Path, out: &Path, seed_override: Option<u64>) -> Result<()> {
    let file = SimulateFile::from_path(config_path)?;
    let mut config = file.to_experiment_config()?;
    if let Some(seed) = seed_override {
        config.seed = seed;
    }
    create_dir(out)?;
    let result = run_trial(&config)?;
    let summary = TrialSummary::new(&config, &result);
    write_trial_artifacts(out, &summary, &result)?;
    // The manifest is written last and marks a complete run.
    write_manifest(out, "simulate", config_path, config.seed)?;
    println!(
        "rmse = {:.3} K (ramp {:.3}, hold {:.3}), hold mean error {:+.3} K -> {}",
        result.rmse,
        result.phases.ramp_rmse,
        result.phases.hold_rmse,
        result.phases.hold_mean_error,
        out.display()
    );
    Ok(())
}

fn write_aggregate_csv(dir: &Path, results: &[ConditionResult]) -> Result<()> {
    let mut text = String::from("condition,mean_rmse,std_rmse\n");
    for r in results {
        text.push_str(&format!("{},{},{}\n", r.name, r.mean_rmse, r.std_rmse));
    }
    write_file(&dir.join("aggregate.csv"), text.as_bytes())
}

fn cmd_sweep(config_path: &Path, out: &Path) -> Result<()> {
    let file = SweepFile::from_path(config_path)?;
    let conditions = file.to_conditions()?;
    create_dir(out)?;
    let results = run_sweep(&conditions)?;
    for (condition, result) in conditions.iter().zip(&results) {
        let condition_dir = out.join(&condition.name);
        for (i, trial) in result.trials.iter().enumerate() {
            let mut config = condition.config;
            config.seed = trial.seed;
            let summary = TrialSummary::new(&config, trial);
            write_trial_artifacts(&condition_dir.join(format!("trial_{i:02}")), &summary, trial)?;
        }
        println!(
            "{}: mean rmse {:.3} K, std {:.3} K over {} trials",
            result.name,
            result.mean_rmse,
            result.std_rmse,
            result.trials.len()
        );
    }
    write_aggregate_csv(out, &results)?;
    write_manifest(out, "sweep", config_path, file.base.run.seed)?;
    Ok(())
}

fn cmd_spot_table(
    wavelength_um: f64,
    waist_mm: f64,
    power_w: f64,
    max_df_mm: f64,
    step_mm: f64,
) -> Result<()> {
    if !(step_mm > 0.0) {
        return Err(Error::domain("step_mm", step_mm, "must be > 0"));
    }
    if !(max_df_mm >= 0.0) {
        return Err(Error::domain("max_df_mm", max_df_mm, "must be >= 0"));
    }
    let beam = BeamSpec::new(wavelength_um * 1e-6, waist_mm * 1e-3, power_w)?;
    println!("d_f_mm,spot_radius_mm,peak_intensity_Wcm2");
    let steps = (max_df_mm / step_mm).floor() as usize;
    for k in 0..=steps {
        let d_f_mm = k as f64 * step_mm;
        let d_f = d_f_mm * 1e-3;
        let spot = beam.spot_radius_at(d_f)?;
        let intensity = beam.peak_intensity_at(d_f)? * WM2_TO_WCM2;
        println!("{},{},{}", d_f_mm, spot * 1e3, intensity);
    }
    Ok(())
}
