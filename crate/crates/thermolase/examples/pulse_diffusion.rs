//! Verify the axisymmetric solver against the analytic spread of a Gaussian
//! temperature bump, at two grid resolutions, and dump a field snapshot.
//!
//!     cargo run --release --example pulse_diffusion

use thermolase::harness::TissuePreset;
use thermolase::thermal::{
    step, write_snapshot_csv, BoundaryMode, GridSpec, TemperatureField,
};

fn main() -> thermolase::Result<()> {
    let props = TissuePreset::Gelatin.properties();
    let alpha = props.diffusivity();
    let (sigma0, amplitude, ambient) = (0.25e-3, 10.0, 20.0);
    let t_final = 0.5;

    // A point-symmetric bump diffusing in free space keeps a Gaussian shape
    // with variance sigma0^2 + 2 alpha t.
    let exact = |r: f64, z: f64, t: f64| {
        let var = sigma0 * sigma0 + 2.0 * alpha * t;
        let amp = amplitude * (sigma0 * sigma0 / var).powf(1.5);
        ambient + amp * (-(r * r + z * z) / (2.0 * var)).exp()
    };

    println!("diffusivity {:.3e} m^2/s, bump sigma {:.2} mm, t = {} s\n", alpha, sigma0 * 1e3, t_final);
    println!("{:>10} {:>14} {:>10}", "h_um", "L_inf_err_K", "order");

    let mut previous_error: Option<f64> = None;
    let mut last_field = None;
    for (h, n) in [(50e-6, 61), (25e-6, 121)] {
        let grid = GridSpec {
            dr: h,
            dz: h,
            nr: n,
            nz: n,
            ambient,
        };
        let mut field = TemperatureField::from_fn(grid, |r, z| exact(r, z, 0.0))?;
        step(&mut field, &props, &[], t_final, BoundaryMode::Insulated)?;

        let mut max_err = 0.0_f64;
        for ir in 0..n {
            for iz in 0..n {
                let e = (field.get(ir, iz) - exact(ir as f64 * h, iz as f64 * h, t_final)).abs();
                max_err = max_err.max(e);
            }
        }
        match previous_error {
            None => println!("{:>10.1} {:>14.5e} {:>10}", h * 1e6, max_err, "-"),
            Some(prev) => println!(
                "{:>10.1} {:>14.5e} {:>10.2}",
                h * 1e6,
                max_err,
                (prev / max_err).log2()
            ),
        }
        previous_error = Some(max_err);
        last_field = Some(field);
    }

    let snapshot = std::env::temp_dir().join("pulse_diffusion_final.csv");
    let mut out = std::fs::File::create(&snapshot)
        .map_err(|e| thermolase::Error::Config(e.to_string()))?;
    write_snapshot_csv(&last_field.unwrap(), &mut out)
        .map_err(|e| thermolase::Error::Config(e.to_string()))?;
    println!("\nfinal field written to {}", snapshot.display());
    Ok(())
}
