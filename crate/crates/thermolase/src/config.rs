//! Human-editable TOML run configuration.
//!
//! Keys carry their unit in the name (`power_w`, `waist_mm`, `ambient_c`) so
//! a config file can never be misread. `[beam]` and `[tissue]` are required;
//! every other section falls back to the documented defaults. See the README
//! for the full key reference.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::control::{AdaptationGains, CoefficientBounds, ControllerState, ReferenceProfile};
use crate::error::{Error, Result};
use crate::harness::{ExperimentConfig, SensorSpec, SweepCondition, TissuePreset};
use crate::optics::BeamSpec;
use crate::thermal::{GridSpec, TissueProperties};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeamSection {
    pub wavelength_um: f64,
    pub waist_mm: f64,
    pub power_w: f64,
}

/// Tissue selection: a named preset, explicit properties, or a preset with
/// per-field overrides (handy for perturbation studies).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TissueSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thermal_conductivity_w_m_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub volumetric_heat_capacity_j_m3_k: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absorption_coefficient_per_m: Option<f64>,
}

impl TissueSection {
    fn resolve(&self) -> Result<TissueProperties> {
        let base = match &self.preset {
            Some(name) => Some(name.parse::<TissuePreset>()?.properties()),
            None => None,
        };
        let all_explicit = self.thermal_conductivity_w_m_k.is_some()
            && self.volumetric_heat_capacity_j_m3_k.is_some()
            && self.absorption_coefficient_per_m.is_some();
        if base.is_none() && !all_explicit {
            return Err(Error::Config(
                "tissue: set `preset` or all of `thermal_conductivity_w_m_k`, \
                 `volumetric_heat_capacity_j_m3_k`, `absorption_coefficient_per_m`"
                    .into(),
            ));
        }
        let base = base.unwrap_or(TissueProperties {
            volumetric_heat_capacity: 0.0,
            thermal_conductivity: 0.0,
            absorption_coefficient: 0.0,
        });
        Ok(TissueProperties {
            thermal_conductivity: self.thermal_conductivity_w_m_k.unwrap_or(base.thermal_conductivity),
            volumetric_heat_capacity: self
                .volumetric_heat_capacity_j_m3_k
                .unwrap_or(base.volumetric_heat_capacity),
            absorption_coefficient: self
                .absorption_coefficient_per_m
                .unwrap_or(base.absorption_coefficient),
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridSection {
    pub dr_mm: f64,
    pub dz_mm: f64,
    pub nr: usize,
    pub nz: usize,
    pub ambient_c: f64,
}

impl Default for GridSection {
    fn default() -> Self {
        GridSection {
            dr_mm: 0.05,
            dz_mm: 0.0125,
            nr: 101,
            nz: 161,
            ambient_c: 20.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProfileSection {
    pub start_c: f64,
    pub target_c: f64,
    pub ramp_rate_k_per_s: f64,
    pub hold_duration_s: f64,
}

impl Default for ProfileSection {
    fn default() -> Self {
        ProfileSection {
            start_c: 20.0,
            target_c: 50.0,
            ramp_rate_k_per_s: 2.0,
            hold_duration_s: 70.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ControllerSection {
    pub peak_coeff: f64,
    pub conduction_coeff: f64,
    pub reference_coeff: f64,
    pub gain_peak: f64,
    pub gain_conduction: f64,
    pub gain_reference: f64,
    pub coeff_min: f64,
    pub coeff_max: f64,
}

impl Default for ControllerSection {
    fn default() -> Self {
        ControllerSection {
            peak_coeff: 0.152,
            conduction_coeff: -0.288,
            reference_coeff: 1.0,
            gain_peak: 0.1,
            gain_conduction: 1e-4,
            gain_reference: 0.1,
            coeff_min: -10.0,
            coeff_max: 10.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LoopSection {
    pub control_period_s: f64,
    pub actuator_rate_limit_mm_per_s: f64,
    pub max_focal_distance_mm: f64,
}

impl Default for LoopSection {
    fn default() -> Self {
        LoopSection {
            control_period_s: 0.01,
            actuator_rate_limit_mm_per_s: 20.0,
            max_focal_distance_mm: 50.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SensorSection {
    pub pixel_pitch_mm: f64,
    pub noise_sigma_c: f64,
}

impl Default for SensorSection {
    fn default() -> Self {
        SensorSection {
            pixel_pitch_mm: 0.2,
            noise_sigma_c: 0.1,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunSection {
    pub seed: u64,
    pub trial_count: usize,
}

impl Default for RunSection {
    fn default() -> Self {
        RunSection {
            seed: 42,
            trial_count: 1,
        }
    }
}

/// A single-trial run configuration file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateFile {
    pub beam: BeamSection,
    pub tissue: TissueSection,
    #[serde(default)]
    pub grid: GridSection,
    #[serde(default)]
    pub profile: ProfileSection,
    #[serde(default)]
    pub controller: ControllerSection,
    #[serde(default, rename = "loop")]
    pub loop_: LoopSection,
    #[serde(default)]
    pub sensor: SensorSection,
    #[serde(default)]
    pub run: RunSection,
}

impl SimulateFile {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Resolve into SI units and validate every field.
    pub fn to_experiment_config(&self) -> Result<ExperimentConfig> {
        let config = ExperimentConfig {
            beam: BeamSpec {
                wavelength: self.beam.wavelength_um * 1e-6,
                waist: self.beam.waist_mm * 1e-3,
                power: self.beam.power_w,
            },
            tissue: self.tissue.resolve()?,
            grid: GridSpec {
                dr: self.grid.dr_mm * 1e-3,
                dz: self.grid.dz_mm * 1e-3,
                nr: self.grid.nr,
                nz: self.grid.nz,
                ambient: self.grid.ambient_c,
            },
            profile: ReferenceProfile {
                start: self.profile.start_c,
                target: self.profile.target_c,
                ramp_rate: self.profile.ramp_rate_k_per_s,
                hold_duration: self.profile.hold_duration_s,
            },
            controller: ControllerState {
                peak_coeff: self.controller.peak_coeff,
                conduction_coeff: self.controller.conduction_coeff,
                reference_coeff: self.controller.reference_coeff,
                gains: AdaptationGains {
                    peak: self.controller.gain_peak,
                    conduction: self.controller.gain_conduction,
                    reference: self.controller.gain_reference,
                },
                bounds: CoefficientBounds {
                    min: self.controller.coeff_min,
                    max: self.controller.coeff_max,
                },
            },
            control_period: self.loop_.control_period_s,
            actuator_rate_limit: self.loop_.actuator_rate_limit_mm_per_s * 1e-3,
            d_f_max: self.loop_.max_focal_distance_mm * 1e-3,
            sensor: SensorSpec {
                pixel_pitch: self.sensor.pixel_pitch_mm * 1e-3,
                noise_sigma: self.sensor.noise_sigma_c,
            },
            seed: self.run.seed,
            trial_count: self.run.trial_count,
        };
        config
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(config)
    }
}

/// One named condition of a sweep: overrides applied on top of `[base]`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConditionSection {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tissue: Option<TissueSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepSection {
    /// Repetitions per condition; seeds step from the base seed.
    pub repetitions: usize,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection { repetitions: 5 }
    }
}

/// A sweep configuration file: shared `[base]` settings plus one
/// `[[condition]]` per experimental condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepFile {
    #[serde(default)]
    pub sweep: SweepSection,
    pub base: SimulateFile,
    #[serde(rename = "condition")]
    pub conditions: Vec<ConditionSection>,
}

impl SweepFile {
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_conditions(&self) -> Result<Vec<SweepCondition>> {
        if self.conditions.is_empty() {
            return Err(Error::Config("sweep needs at least one [[condition]]".into()));
        }
        if self.sweep.repetitions < 1 {
            return Err(Error::Config("sweep.repetitions must be >= 1".into()));
        }
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::with_capacity(self.conditions.len());
        for cond in &self.conditions {
            if cond.name.is_empty()
                || !cond
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
            {
                return Err(Error::Config(format!(
                    "condition name {:?} must be nonempty and use only [A-Za-z0-9_-]",
                    cond.name
                )));
            }
            if !seen.insert(cond.name.clone()) {
                return Err(Error::Config(format!(
                    "duplicate condition name {:?}",
                    cond.name
                )));
            }
            let mut file = self.base.clone();
            if let Some(tissue) = &cond.tissue {
                file.tissue = tissue.clone();
            }
            if let Some(seed) = cond.seed {
                file.run.seed = seed;
            }
            file.run.trial_count = self.sweep.repetitions;
            out.push(SweepCondition {
                name: cond.name.clone(),
                config: file.to_experiment_config()?,
            });
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const MINIMAL: &str = r#"
        [beam]
        wavelength_um = 10.6
        waist_mm = 0.025
        power_w = 0.015

        [tissue]
        preset = "gelatin"
    "#;

    #[test]
    fn minimal_config_resolves_to_defaults() {
        let file = SimulateFile::from_str(MINIMAL).unwrap();
        let config = file.to_experiment_config().unwrap();
        let default = ExperimentConfig::default();
        // Unit-converted lengths can differ from literal defaults by an ULP.
        assert_relative_eq!(config.beam.wavelength, default.beam.wavelength, max_relative = 1e-14);
        assert_relative_eq!(config.beam.waist, default.beam.waist, max_relative = 1e-14);
        assert_eq!(config.beam.power, default.beam.power);
        assert_eq!(config.tissue, default.tissue);
        assert_relative_eq!(config.grid.dr, default.grid.dr, max_relative = 1e-14);
        assert_relative_eq!(config.grid.dz, default.grid.dz, max_relative = 1e-14);
        assert_eq!((config.grid.nr, config.grid.nz), (default.grid.nr, default.grid.nz));
        assert_eq!(config.grid.ambient, default.grid.ambient);
        assert_eq!(config.profile, default.profile);
        assert_eq!(config.controller, default.controller);
        assert_eq!(config.control_period, default.control_period);
        assert_relative_eq!(
            config.actuator_rate_limit,
            default.actuator_rate_limit,
            max_relative = 1e-14
        );
        assert_relative_eq!(config.d_f_max, default.d_f_max, max_relative = 1e-14);
        assert_relative_eq!(
            config.sensor.pixel_pitch,
            default.sensor.pixel_pitch,
            max_relative = 1e-14
        );
        assert_eq!(config.sensor.noise_sigma, default.sensor.noise_sigma);
        assert_eq!((config.seed, config.trial_count), (default.seed, default.trial_count));
    }

    #[test]
    fn missing_power_names_the_key() {
        let text = r#"
            [beam]
            wavelength_um = 10.6
            waist_mm = 0.025

            [tissue]
            preset = "gelatin"
        "#;
        let err = SimulateFile::from_str(text).unwrap_err();
        assert!(err.to_string().contains("power_w"), "got: {err}");
    }

    #[test]
    fn missing_beam_section_names_the_section() {
        let err = SimulateFile::from_str("[tissue]\npreset = \"liver\"\n").unwrap_err();
        assert!(err.to_string().contains("beam"), "got: {err}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let text = format!("{MINIMAL}\n[grid]\ndm_mm = 1.0\n");
        assert!(SimulateFile::from_str(&text).is_err());
    }

    #[test]
    fn tissue_requires_preset_or_full_explicit() {
        let text = r#"
            [beam]
            wavelength_um = 10.6
            waist_mm = 0.025
            power_w = 0.015

            [tissue]
            thermal_conductivity_w_m_k = 0.6
        "#;
        let err = SimulateFile::from_str(text)
            .unwrap()
            .to_experiment_config()
            .unwrap_err();
        assert!(err.to_string().contains("tissue"));
    }

    #[test]
    fn tissue_overrides_apply_on_top_of_preset() {
        let text = r#"
            [beam]
            wavelength_um = 10.6
            waist_mm = 0.025
            power_w = 0.015

            [tissue]
            preset = "gelatin"
            thermal_conductivity_w_m_k = 0.9
        "#;
        let config = SimulateFile::from_str(text)
            .unwrap()
            .to_experiment_config()
            .unwrap();
        assert_relative_eq!(config.tissue.thermal_conductivity, 0.9);
        assert_relative_eq!(config.tissue.volumetric_heat_capacity, 4.2e6);
    }

    #[test]
    fn semantic_validation_flags_bad_values() {
        let text = r#"
            [beam]
            wavelength_um = 10.6
            waist_mm = -0.025
            power_w = 0.015

            [tissue]
            preset = "gelatin"
        "#;
        let err = SimulateFile::from_str(text)
            .unwrap()
            .to_experiment_config()
            .unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        assert!(err.to_string().contains("waist"));
    }

    #[test]
    fn sweep_file_expands_conditions() {
        let text = r#"
            [sweep]
            repetitions = 2

            [base.beam]
            wavelength_um = 10.6
            waist_mm = 0.025
            power_w = 0.015

            [base.tissue]
            preset = "gelatin"

            [[condition]]
            name = "gelatin"

            [[condition]]
            name = "bone"
            tissue = { preset = "bone" }

            [[condition]]
            name = "kappa-low"
            tissue = { preset = "gelatin", thermal_conductivity_w_m_k = 0.3 }
        "#;
        let sweep = SweepFile::from_str(text).unwrap();
        let conditions = sweep.to_conditions().unwrap();
        assert_eq!(conditions.len(), 3);
        assert_eq!(conditions[0].config.trial_count, 2);
        assert_eq!(conditions[1].config.tissue, TissuePreset::Bone.properties());
        assert_relative_eq!(conditions[2].config.tissue.thermal_conductivity, 0.3);
        assert_eq!(
            conditions[2].config.tissue.volumetric_heat_capacity,
            TissuePreset::Gelatin.properties().volumetric_heat_capacity
        );
    }

    #[test]
    fn sweep_rejects_duplicate_or_bad_names() {
        let text = r#"
            [base.beam]
            wavelength_um = 10.6
            waist_mm = 0.025
            power_w = 0.015

            [base.tissue]
            preset = "gelatin"

            [[condition]]
            name = "a"

            [[condition]]
            name = "a"
        "#;
        assert!(SweepFile::from_str(text).unwrap().to_conditions().is_err());
        let text = text.replace("name = \"a\"", "name = \"bad name\"");
        assert!(SweepFile::from_str(&text).unwrap().to_conditions().is_err());
    }
}
