//! Gaussian beam geometry: spot size versus defocus, peak intensity, and the
//! inverse map from a desired peak intensity to the focal distance that
//! produces it.
//!
//! Conventions: the waist `w` is the 1/e² intensity radius at focus, so the
//! on-axis peak intensity of a beam carrying power `P` through a spot of
//! radius `w(z)` is `I = 2P / (π w(z)²)`. All quantities are SI (m, W, W/m²).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Geometry and power of a focused Gaussian beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamSpec {
    /// Wavelength [m].
    pub wavelength: f64,
    /// Waist radius at focus (1/e² intensity radius) [m].
    pub waist: f64,
    /// Optical power [W].
    pub power: f64,
}

impl BeamSpec {
    pub fn new(wavelength: f64, waist: f64, power: f64) -> Result<Self> {
        let beam = BeamSpec {
            wavelength,
            waist,
            power,
        };
        beam.validate()?;
        Ok(beam)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wavelength > 0.0) || !self.wavelength.is_finite() {
            return Err(Error::domain("wavelength", self.wavelength, "must be > 0"));
        }
        if !(self.waist > 0.0) || !self.waist.is_finite() {
            return Err(Error::domain("waist", self.waist, "must be > 0"));
        }
        if !(self.power > 0.0) || !self.power.is_finite() {
            return Err(Error::domain("power", self.power, "must be > 0"));
        }
        Ok(())
    }

    /// Rayleigh range z_R = π w² / λ, the defocus over which the spot area doubles [m].
    pub fn rayleigh_range(&self) -> f64 {
        std::f64::consts::PI * self.waist * self.waist / self.wavelength
    }

    /// Spot radius w(z) = w √(1 + (z/z_R)²) at axial distance `z` from focus [m].
    ///
    /// `z` must be nonnegative; the beam is symmetric about focus, so callers
    /// pass the magnitude of the defocus.
    pub fn spot_radius_at(&self, z: f64) -> Result<f64> {
        if z < 0.0 || !z.is_finite() {
            return Err(Error::domain("axial distance", z, "must be >= 0"));
        }
        let ratio = z / self.rayleigh_range();
        Ok(self.waist * (1.0 + ratio * ratio).sqrt())
    }

    /// On-axis peak intensity 2P/(π w(d_f)²) at focal distance `d_f` [W/m²].
    ///
    /// Strictly decreasing in `d_f`; the maximum `2P/(π w²)` is at focus.
    pub fn peak_intensity_at(&self, d_f: f64) -> Result<f64> {
        let w = self.spot_radius_at(d_f)?;
        Ok(2.0 * self.power / (std::f64::consts::PI * w * w))
    }

    /// Peak intensity at perfect focus, the strongest the beam can deliver [W/m²].
    pub fn max_intensity(&self) -> f64 {
        2.0 * self.power / (std::f64::consts::PI * self.waist * self.waist)
    }

    /// Focal distance that delivers peak intensity `target`:
    /// d_f = z_R √(2P/(target π w²) − 1) [m].
    ///
    /// Inverse of [`peak_intensity_at`](Self::peak_intensity_at); strictly
    /// decreasing in `target`. Valid for `0 < target <= max_intensity()`.
    pub fn focal_distance_for_intensity(&self, target: f64) -> Result<f64> {
        if !(target > 0.0) || !target.is_finite() {
            return Err(Error::domain("target intensity", target, "must be > 0"));
        }
        let max = self.max_intensity();
        if target > max {
            return Err(Error::UnreachableIntensity { target, max });
        }
        // max/target >= 1 up to rounding; clamp the radicand so that
        // target == max yields exactly zero defocus.
        let radicand = (max / target - 1.0).max(0.0);
        Ok(self.rayleigh_range() * radicand.sqrt())
    }
}

/// Waist of the equivalent focused Gaussian for a fiber-delivered beam that
/// diverges with far-field half-angle θ = asin(NA): w = λ/(π θ) [m].
pub fn equivalent_waist_from_na(wavelength: f64, numerical_aperture: f64) -> Result<f64> {
    if !(wavelength > 0.0) || !wavelength.is_finite() {
        return Err(Error::domain("wavelength", wavelength, "must be > 0"));
    }
    if !(numerical_aperture > 0.0 && numerical_aperture < 1.0) {
        return Err(Error::domain(
            "numerical aperture",
            numerical_aperture,
            "must be in (0, 1)",
        ));
    }
    let theta = numerical_aperture.asin();
    Ok(wavelength / (std::f64::consts::PI * theta))
}
