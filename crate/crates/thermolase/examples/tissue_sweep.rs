//! The four-tissue experiment: five repetitions per preset with stepped
//! seeds, aggregated as mean and standard deviation of the tracking RMSE.
//! Trials run in parallel; set THERMOLASE_THREADS to cap concurrency.
//!
//!     cargo run --release --example tissue_sweep

use thermolase::harness::{run_sweep, ExperimentConfig, SweepCondition, TissuePreset};

fn main() -> thermolase::Result<()> {
    let conditions: Vec<SweepCondition> = TissuePreset::ALL
        .iter()
        .map(|preset| {
            let mut config = ExperimentConfig::default();
            config.tissue = preset.properties();
            config.trial_count = 5;
            SweepCondition {
                name: preset.name().to_string(),
                config,
            }
        })
        .collect();

    println!("running {} trials...", conditions.len() * 5);
    let results = run_sweep(&conditions)?;

    println!("\n{:>9} {:>10} {:>9}", "condition", "mean_rmse", "std_rmse");
    for result in &results {
        println!(
            "{:>9} {:>10.3} {:>9.3}",
            result.name, result.mean_rmse, result.std_rmse
        );
    }
    Ok(())
}
