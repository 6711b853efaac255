//! Robustness to property uncertainty: perturb each gelatin parameter by
//! ±50% without retuning anything and watch the tracking RMSE.
//!
//!     cargo run --release --example robustness_scan

use thermolase::harness::{run_trial, ExperimentConfig, TissuePreset};
use thermolase::thermal::TissueProperties;

fn main() -> thermolase::Result<()> {
    let base = TissuePreset::Gelatin.properties();

    println!("{:<26} {:>10}", "tissue", "rmse_K");
    let nominal = {
        let config = ExperimentConfig::default();
        run_trial(&config)?.rmse
    };
    println!("{:<26} {:>10.3}", "gelatin nominal", nominal);

    let cases: [(&str, TissueProperties); 6] = [
        ("conductivity x0.5", TissueProperties { thermal_conductivity: base.thermal_conductivity * 0.5, ..base }),
        ("conductivity x1.5", TissueProperties { thermal_conductivity: base.thermal_conductivity * 1.5, ..base }),
        ("heat capacity x0.5", TissueProperties { volumetric_heat_capacity: base.volumetric_heat_capacity * 0.5, ..base }),
        ("heat capacity x1.5", TissueProperties { volumetric_heat_capacity: base.volumetric_heat_capacity * 1.5, ..base }),
        ("absorption x0.5", TissueProperties { absorption_coefficient: base.absorption_coefficient * 0.5, ..base }),
        ("absorption x1.5", TissueProperties { absorption_coefficient: base.absorption_coefficient * 1.5, ..base }),
    ];
    for (label, tissue) in cases {
        let mut config = ExperimentConfig::default();
        config.tissue = tissue;
        let result = run_trial(&config)?;
        println!("{label:<26} {:>10.3}", result.rmse);
    }
    Ok(())
}
