//! Closed-loop simulation of adaptive tissue temperature control by laser
//! defocusing.
//!
//! A focused laser heats a tissue slab; the only actuator is the focal
//! distance between the beam waist and the surface, which trades spot size
//! against peak intensity. A thermal camera reads the surface, and an
//! adaptive controller adjusts three feedback coefficients online to make
//! the peak temperature track a ramp-and-hold reference without knowing the
//! tissue's thermal or optical properties.
//!
//! Modules:
//! - [`optics`] — Gaussian beam geometry and the intensity ↔ focal-distance maps.
//! - [`thermal`] — axisymmetric finite-volume heat solver with a Beer–Lambert
//!   volumetric source and a synthetic surface camera.
//! - [`control`] — the adaptive control law, conduction estimator, gradient
//!   adaptation with anti-windup, and actuator saturation.
//! - [`harness`] — the closed loop at the camera rate, tissue presets,
//!   metrics, sweeps, and CSV/JSON artifact output.
//! - [`config`] — TOML run configuration with units in the key names.
//!
//! Runnable walkthroughs live in `examples/`; the `thermolase` binary drives
//! single runs, sweeps, and focus tables from config files.

pub mod config;
pub mod control;
pub mod error;
pub mod harness;
pub mod optics;
pub mod thermal;

pub use error::{Error, Result};
