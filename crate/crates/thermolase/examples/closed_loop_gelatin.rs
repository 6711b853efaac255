//! One full closed-loop trial on the gelatin preset: ramp the surface peak
//! temperature to 50 °C at 2 K/s, hold for 70 s, and report tracking quality.
//!
//!     cargo run --release --example closed_loop_gelatin

use thermolase::harness::{run_trial, ExperimentConfig};

fn main() -> thermolase::Result<()> {
    let config = ExperimentConfig::default();
    println!(
        "gelatin, {} x {} grid, seed {}, camera noise {} K",
        config.grid.nr, config.grid.nz, config.seed, config.sensor.noise_sigma
    );

    let result = run_trial(&config)?;

    println!("\n{:>7} {:>7} {:>8} {:>10} {:>12} {:>8}", "t_s", "r_C", "Tpeak_C", "f_K/mm2", "I_W/cm2", "d_f_mm");
    for rec in result.series.iter().step_by(500) {
        println!(
            "{:>7.1} {:>7.1} {:>8.2} {:>10.1} {:>12.3} {:>8.2}",
            rec.t,
            rec.reference,
            rec.t_peak,
            rec.conduction,
            rec.i_applied_w_cm2,
            rec.d_f * 1e3
        );
    }

    println!("\nfull-trial RMSE : {:.3} K", result.rmse);
    println!("ramp RMSE       : {:.3} K", result.phases.ramp_rmse);
    println!("hold RMSE       : {:.3} K", result.phases.hold_rmse);
    println!("hold mean error : {:+.3} K", result.phases.hold_mean_error);
    println!(
        "coefficients    : ({:.3}, {:.3}, {:.3}) -> ({:.3}, {:.3}, {:.3})",
        config.controller.peak_coeff,
        config.controller.conduction_coeff,
        config.controller.reference_coeff,
        result.final_controller.peak_coeff,
        result.final_controller.conduction_coeff,
        result.final_controller.reference_coeff
    );
    Ok(())
}
