//! Adaptive temperature controller.
//!
//! The commanded beam intensity is a linear combination of three measured
//! signals (regressors): the surface peak temperature, a discrete estimate of
//! the surface heat-conduction term, and the reference temperature. The three
//! coefficients are adjusted online by a gradient rule driven by the tracking
//! error, so no prior knowledge of the tissue properties is required.
//!
//! Controller units: intensities in W/cm², temperatures in °C, conduction
//! estimates in K/mm². The harness converts to SI at the optics boundary.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::optics::BeamSpec;
use crate::thermal::SurfaceFrame;

/// Per-coefficient adaptation rates [1/(regressor-unit²·s), controller units].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdaptationGains {
    pub peak: f64,
    pub conduction: f64,
    pub reference: f64,
}

/// Clamp range applied to every coefficient after an update.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientBounds {
    pub min: f64,
    pub max: f64,
}

impl Default for CoefficientBounds {
    fn default() -> Self {
        // Wide enough for any plant the simulator produces; guards against
        // runaway drift during sensor glitches.
        CoefficientBounds {
            min: -10.0,
            max: 10.0,
        }
    }
}

/// The adaptive coefficients together with their gains and bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControllerState {
    /// Coefficient on the measured peak temperature [W/cm² per °C].
    pub peak_coeff: f64,
    /// Coefficient on the conduction estimate [W/cm² per K/mm²].
    pub conduction_coeff: f64,
    /// Coefficient on the reference temperature [W/cm² per °C].
    pub reference_coeff: f64,
    pub gains: AdaptationGains,
    pub bounds: CoefficientBounds,
}

impl ControllerState {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("peak gain", self.gains.peak),
            ("conduction gain", self.gains.conduction),
            ("reference gain", self.gains.reference),
        ] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::domain("gain", value, "must be >= 0 and finite"));
            }
            let _ = name;
        }
        if !(self.bounds.min < self.bounds.max) {
            return Err(Error::domain(
                "coefficient bounds",
                self.bounds.min,
                "min must be < max",
            ));
        }
        for c in [self.peak_coeff, self.conduction_coeff, self.reference_coeff] {
            if !(c >= self.bounds.min && c <= self.bounds.max) {
                return Err(Error::domain("coefficient", c, "must lie within bounds"));
            }
        }
        Ok(())
    }
}

/// Measured signals that multiply the adaptive coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Regressors {
    /// Surface peak temperature [°C].
    pub peak: f64,
    /// Surface conduction estimate [K/mm²].
    pub conduction: f64,
    /// Reference temperature [°C].
    pub reference: f64,
}

/// Where the commanded intensity sits relative to the actuator range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Saturation {
    None,
    /// Clamped up to the weakest deliverable intensity (maximum defocus).
    Low,
    /// Clamped down to the focused maximum.
    High,
}

impl Saturation {
    pub fn is_saturated(&self) -> bool {
        !matches!(self, Saturation::None)
    }
}

/// Ramp-and-hold reference temperature profile r(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferenceProfile {
    /// Starting temperature [°C].
    pub start: f64,
    /// Hold temperature [°C].
    pub target: f64,
    /// Ramp slope [K/s].
    pub ramp_rate: f64,
    /// Time spent at the target after the ramp [s].
    pub hold_duration: f64,
}

impl ReferenceProfile {
    pub fn validate(&self) -> Result<()> {
        if !(self.ramp_rate > 0.0) {
            return Err(Error::domain("ramp rate", self.ramp_rate, "must be > 0"));
        }
        if self.target < self.start {
            return Err(Error::domain(
                "target",
                self.target,
                "must be >= the start temperature",
            ));
        }
        if !(self.hold_duration >= 0.0) {
            return Err(Error::domain(
                "hold duration",
                self.hold_duration,
                "must be >= 0",
            ));
        }
        Ok(())
    }

    /// Duration of the linear ramp [s].
    pub fn ramp_duration(&self) -> f64 {
        (self.target - self.start) / self.ramp_rate
    }

    /// Ramp plus hold [s].
    pub fn total_duration(&self) -> f64 {
        self.ramp_duration() + self.hold_duration
    }

    /// r(t): linear from start to target, then constant.
    pub fn value(&self, t: f64) -> f64 {
        (self.start + self.ramp_rate * t.max(0.0)).min(self.target)
    }
}

/// Discrete surface Laplacian at the beam axis from the innermost camera
/// pixels: 4·(T(pitch) − T(0)) / pitch² [K/mm²].
///
/// Approximates the conduction term of the surface heat balance; negative
/// over a hot spot.
pub fn conduction_estimate(frame: &SurfaceFrame) -> Result<f64> {
    if frame.samples.len() < 3 {
        return Err(Error::InsufficientSamples(frame.samples.len()));
    }
    let pitch_mm = frame.pixel_pitch * 1e3;
    Ok(4.0 * (frame.samples[1] - frame.samples[0]) / (pitch_mm * pitch_mm))
}

/// Raw (pre-saturation) intensity command [W/cm²]:
/// peak_coeff·T_peak + conduction_coeff·f + reference_coeff·r.
pub fn control_law(state: &ControllerState, t_peak: f64, conduction: f64, reference: f64) -> f64 {
    state.peak_coeff * t_peak + state.conduction_coeff * conduction + state.reference_coeff * reference
}

/// Gradient adaptation: each coefficient moves by gain·error·regressor·dt,
/// then is clamped to its bounds.
///
/// Anti-windup: while the actuator is saturated, updates are applied only if
/// they would steer the command back toward the admissible range — the sign
/// of the common factor `error` decides, since every coefficient's command
/// contribution changes by gain·error·regressor²·dt ≥ 0 times sign(error).
/// Updates that would push further into the active limit are skipped.
pub fn adapt(
    state: &ControllerState,
    error: f64,
    phi: &Regressors,
    dt: f64,
    saturation: Saturation,
) -> ControllerState {
    let frozen = match saturation {
        Saturation::None => false,
        Saturation::High => error >= 0.0,
        Saturation::Low => error <= 0.0,
    };
    if frozen {
        return *state;
    }
    let clamp = |v: f64| v.clamp(state.bounds.min, state.bounds.max);
    ControllerState {
        peak_coeff: clamp(state.peak_coeff + state.gains.peak * error * phi.peak * dt),
        conduction_coeff: clamp(
            state.conduction_coeff + state.gains.conduction * error * phi.conduction * dt,
        ),
        reference_coeff: clamp(
            state.reference_coeff + state.gains.reference * error * phi.reference * dt,
        ),
        ..*state
    }
}

/// Clamp an intensity command [W/m²] into what the actuator can deliver:
/// the focused maximum down to the intensity at `d_f_max`.
pub fn saturate(command: f64, beam: &BeamSpec, d_f_max: f64) -> Result<(f64, Saturation)> {
    let i_max = beam.max_intensity();
    let i_min = beam.peak_intensity_at(d_f_max)?;
    if command > i_max {
        Ok((i_max, Saturation::High))
    } else if command < i_min {
        Ok((i_min, Saturation::Low))
    } else {
        Ok((command, Saturation::None))
    }
}
