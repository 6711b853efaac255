//! Gaussian beam geometry tour: how defocus trades spot size against peak
//! intensity, and how to invert a desired intensity into a focal distance.
//!
//!     cargo run --release --example beam_focus

use thermolase::harness::WM2_TO_WCM2;
use thermolase::optics::{equivalent_waist_from_na, BeamSpec};

fn main() -> thermolase::Result<()> {
    // The default simulated beam: a fiber-delivered CO2 laser.
    let beam = BeamSpec::new(10.6e-6, 25e-6, 15e-3)?;
    println!(
        "beam: wavelength {:.1} um, waist {:.0} um, power {:.0} mW",
        beam.wavelength * 1e6,
        beam.waist * 1e6,
        beam.power * 1e3
    );
    println!("Rayleigh range: {:.3} mm", beam.rayleigh_range() * 1e3);
    println!(
        "focused peak intensity: {:.1} W/cm^2\n",
        beam.max_intensity() * WM2_TO_WCM2
    );

    println!("{:>8} {:>12} {:>16}", "d_f_mm", "spot_mm", "I_peak_W/cm2");
    for d_f_mm in [0.0, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0] {
        let d_f = d_f_mm * 1e-3;
        println!(
            "{:>8.1} {:>12.4} {:>16.4}",
            d_f_mm,
            beam.spot_radius_at(d_f)? * 1e3,
            beam.peak_intensity_at(d_f)? * WM2_TO_WCM2
        );
    }

    // Invert: what focal distance delivers 10 W/cm^2?
    let target = 10.0 / WM2_TO_WCM2;
    let d_f = beam.focal_distance_for_intensity(target)?;
    println!(
        "\n10 W/cm^2 is delivered at d_f = {:.3} mm (spot {:.3} mm)",
        d_f * 1e3,
        beam.spot_radius_at(d_f)? * 1e3
    );
    let roundtrip = beam.peak_intensity_at(d_f)? * WM2_TO_WCM2;
    println!("forward map at that distance: {roundtrip:.6} W/cm^2");

    // A diverging fiber tip is modeled by the waist of the equivalent
    // focused beam: w = lambda / (pi asin(NA)).
    for na in [0.1, 0.135, 0.22] {
        let w = equivalent_waist_from_na(beam.wavelength, na)?;
        println!("fiber NA {na:<5} -> equivalent waist {:.1} um", w * 1e6);
    }
    Ok(())
}
