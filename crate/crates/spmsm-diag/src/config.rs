//! Scenario configuration files: a JSON document selecting motor overrides,
//! simulation settings, the fault scenarios to run, and which outputs to
//! emit. Missing fields fall back to the catalog defaults; unknown keys are
//! rejected with the offending key named. Length overrides use millimetre
//! keys and are converted at this boundary.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::diagnosis::Thresholds;
use crate::error::{Error, Result};
use crate::fault::FaultSpec;
use crate::motor::{MotorSpec, VehicleSpec};
use crate::synth::SimConfig;

/// Which artifacts a run writes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputSelection {
    pub waveforms: bool,
    pub spectra: bool,
    pub harmonic_table: bool,
    pub report: bool,
    pub plots: bool,
}

impl Default for OutputSelection {
    fn default() -> Self {
        Self {
            waveforms: true,
            spectra: true,
            harmonic_table: true,
            report: true,
            plots: false,
        }
    }
}

/// One named fault case.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub fault: FaultSpec,
}

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub motor: MotorSpec,
    pub vehicle: VehicleSpec,
    pub sim: SimConfig,
    pub scenarios: Vec<Scenario>,
    pub outputs: OutputSelection,
    pub output_dir: PathBuf,
    pub thresholds: Thresholds,
    /// Worker threads for scenario execution; 0 means one per CPU.
    pub workers: usize,
}

impl ScenarioConfig {
    /// Healthy-only run on the default machine.
    pub fn default_healthy() -> Self {
        Self {
            motor: MotorSpec::default(),
            vehicle: VehicleSpec::default(),
            sim: SimConfig::default(),
            scenarios: vec![Scenario {
                name: "healthy".into(),
                fault: FaultSpec::Healthy,
            }],
            outputs: OutputSelection::default(),
            output_dir: PathBuf::from("out"),
            thresholds: Thresholds::default(),
            workers: 0,
        }
    }

    /// The standard eight-scenario study: healthy, the three eccentricity
    /// cases at 40%, uniform demagnetization at severity 0.25, and the three
    /// partial-demagnetization variants at severity 0.25.
    pub fn matrix8() -> Self {
        let scenarios = vec![
            Scenario {
                name: "healthy".into(),
                fault: FaultSpec::Healthy,
            },
            Scenario {
                name: "static_ecc_40".into(),
                fault: FaultSpec::StaticEcc { delta_s: 0.4 },
            },
            Scenario {
                name: "dynamic_ecc_40".into(),
                fault: FaultSpec::DynamicEcc { delta_d: 0.4 },
            },
            Scenario {
                name: "mixed_ecc_40_40".into(),
                fault: FaultSpec::MixedEcc {
                    delta_s: 0.4,
                    delta_d: 0.4,
                },
            },
            Scenario {
                name: "uniform_demag_25".into(),
                fault: FaultSpec::UniformDemag { severity: 0.25 },
            },
            Scenario {
                name: "pd_uniform_pole_25".into(),
                fault: FaultSpec::PdUniformPole {
                    severity: 0.25,
                    pole_index: 0,
                },
            },
            Scenario {
                name: "pd_graded_pole_25".into(),
                fault: FaultSpec::PdGradedPole {
                    severity: 0.25,
                    pole_index: 0,
                },
            },
            Scenario {
                name: "pd_shortened_arc_25".into(),
                fault: FaultSpec::PdShortenedArc {
                    arc_fraction: 0.25,
                    pole_index: 0,
                },
            },
        ];
        Self {
            scenarios,
            ..Self::default_healthy()
        }
    }

    /// Check scenario names, fault bounds, and the baseline requirement.
    pub fn validate(&self) -> Result<()> {
        self.motor.validate()?;
        self.vehicle.validate()?;
        self.sim.validate()?;
        self.thresholds.validate()?;
        if self.scenarios.is_empty() {
            return Err(Error::Config("at least one scenario is required".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for scenario in &self.scenarios {
            if scenario.name.is_empty()
                || !scenario
                    .name
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-' || c == '.')
            {
                return Err(Error::Config(format!(
                    "scenario name '{}' must be non-empty and use [A-Za-z0-9_.-]",
                    scenario.name
                )));
            }
            if !seen.insert(scenario.name.clone()) {
                return Err(Error::Config(format!(
                    "duplicate scenario name '{}'",
                    scenario.name
                )));
            }
            scenario
                .fault
                .validate(self.motor.pole_count)
                .map_err(|e| Error::Config(format!("scenario '{}': {e}", scenario.name)))?;
        }
        if self.outputs.report && !self.scenarios.iter().any(is_baseline) {
            return Err(Error::Config(
                "report output needs a healthy baseline scenario (FaultSpec healthy or a \
                 scenario named 'healthy')"
                    .into(),
            ));
        }
        Ok(())
    }

    /// Index of the baseline scenario, when one exists.
    pub fn baseline_index(&self) -> Option<usize> {
        self.scenarios.iter().position(is_baseline)
    }
}

fn is_baseline(s: &Scenario) -> bool {
    matches!(s.fault, FaultSpec::Healthy) || s.name == "healthy"
}

// ─── File form ──────────────────────────────────────────────────────────────

/// Millimetre-keyed motor overrides as they appear in the config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct MotorOverrides {
    stator_outer_diameter_mm: Option<f64>,
    stator_inner_diameter_mm: Option<f64>,
    rotor_outer_diameter_mm: Option<f64>,
    core_length_mm: Option<f64>,
    airgap_mm: Option<f64>,
    magnet_height_mm: Option<f64>,
    magnet_count: Option<u32>,
    slot_count: Option<u32>,
    pole_pairs: Option<u32>,
    pole_count: Option<u32>,
    terminal_current_peak_a: Option<f64>,
    supply_frequency_hz: Option<f64>,
    rated_speed_rpm: Option<f64>,
    turns_per_phase: Option<u32>,
    average_diameter_mm: Option<f64>,
    tooth_height_mm: Option<f64>,
    principal_tooth_angle_rad: Option<f64>,
    inserted_tooth_angle_rad: Option<f64>,
    slot_angle_rad: Option<f64>,
    airgap_flux_density_t: Option<f64>,
    stator_yoke_flux_density_t: Option<f64>,
    fill_factor: Option<f64>,
    magnet_remanence_20c_t: Option<f64>,
    magnet_temp_coeff_per_c: Option<f64>,
    magnet_rel_permeability: Option<f64>,
    magnet_arc_angle_rad: Option<f64>,
    leakage_coeff: Option<f64>,
}

impl MotorOverrides {
    fn apply(&self, mut m: MotorSpec) -> MotorSpec {
        const MM: f64 = 1e-3;
        if let Some(v) = self.stator_outer_diameter_mm {
            m.stator_outer_diameter_m = v * MM;
        }
        if let Some(v) = self.stator_inner_diameter_mm {
            m.stator_inner_diameter_m = v * MM;
        }
        if let Some(v) = self.rotor_outer_diameter_mm {
            m.rotor_outer_diameter_m = v * MM;
        }
        if let Some(v) = self.core_length_mm {
            m.core_length_m = v * MM;
        }
        if let Some(v) = self.airgap_mm {
            m.airgap_m = v * MM;
        }
        if let Some(v) = self.magnet_height_mm {
            m.magnet_height_m = v * MM;
        }
        if let Some(v) = self.magnet_count {
            m.magnet_count = v;
        }
        if let Some(v) = self.slot_count {
            m.slot_count = v;
        }
        if let Some(v) = self.pole_pairs {
            m.pole_pairs = v;
        }
        if let Some(v) = self.pole_count {
            m.pole_count = v;
        }
        if let Some(v) = self.terminal_current_peak_a {
            m.terminal_current_peak_a = v;
        }
        if let Some(v) = self.supply_frequency_hz {
            m.supply_frequency_hz = v;
        }
        if let Some(v) = self.rated_speed_rpm {
            m.rated_speed_rpm = v;
        }
        if let Some(v) = self.turns_per_phase {
            m.turns_per_phase = v;
        }
        if let Some(v) = self.average_diameter_mm {
            m.average_diameter_m = v * MM;
        }
        if let Some(v) = self.tooth_height_mm {
            m.tooth_height_m = v * MM;
        }
        if let Some(v) = self.principal_tooth_angle_rad {
            m.principal_tooth_angle_rad = v;
        }
        if let Some(v) = self.inserted_tooth_angle_rad {
            m.inserted_tooth_angle_rad = v;
        }
        if let Some(v) = self.slot_angle_rad {
            m.slot_angle_rad = v;
        }
        if let Some(v) = self.airgap_flux_density_t {
            m.airgap_flux_density_t = v;
        }
        if let Some(v) = self.stator_yoke_flux_density_t {
            m.stator_yoke_flux_density_t = v;
        }
        if let Some(v) = self.fill_factor {
            m.fill_factor = v;
        }
        if let Some(v) = self.magnet_remanence_20c_t {
            m.magnet_remanence_20c_t = v;
        }
        if let Some(v) = self.magnet_temp_coeff_per_c {
            m.magnet_temp_coeff_per_c = v;
        }
        if let Some(v) = self.magnet_rel_permeability {
            m.magnet_rel_permeability = v;
        }
        if let Some(v) = self.magnet_arc_angle_rad {
            m.magnet_arc_angle_rad = v;
        }
        if let Some(v) = self.leakage_coeff {
            m.leakage_coeff = v;
        }
        m
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct ConfigFile {
    motor: MotorOverrides,
    vehicle: Option<VehicleSpec>,
    sim: Option<SimConfig>,
    scenarios: Option<Vec<Scenario>>,
    outputs: Option<OutputSelection>,
    output_dir: Option<PathBuf>,
    thresholds: Option<Thresholds>,
    workers: Option<usize>,
}

/// Parse a scenario config from JSON text.
pub fn parse_scenario(text: &str) -> Result<ScenarioConfig> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let config = ScenarioConfig {
        motor: file.motor.apply(MotorSpec::default()),
        vehicle: file.vehicle.unwrap_or_default(),
        sim: file.sim.unwrap_or_default(),
        scenarios: file.scenarios.unwrap_or_else(|| {
            vec![Scenario {
                name: "healthy".into(),
                fault: FaultSpec::Healthy,
            }]
        }),
        outputs: file.outputs.unwrap_or_default(),
        output_dir: file.output_dir.unwrap_or_else(|| PathBuf::from("out")),
        thresholds: file.thresholds.unwrap_or_default(),
        workers: file.workers.unwrap_or(0),
    };
    config.validate()?;
    Ok(config)
}

/// Load and validate a scenario config file.
pub fn load_scenario(path: &Path) -> Result<ScenarioConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_object_gives_defaults() {
        let config = parse_scenario("{}").unwrap();
        assert_eq!(config.motor, MotorSpec::default());
        assert_eq!(config.scenarios.len(), 1);
        assert_eq!(config.scenarios[0].fault, FaultSpec::Healthy);
        assert_eq!(config.baseline_index(), Some(0));
    }

    #[test]
    fn mixed_ecc_shorthand_parses() {
        let text = r#"{
            "scenarios": [
                {"name": "healthy", "fault": {"type": "healthy"}},
                {"name": "me", "fault": {"type": "me", "delta_s": 0.4, "delta_d": 0.4}}
            ]
        }"#;
        let config = parse_scenario(text).unwrap();
        assert_eq!(
            config.scenarios[1].fault,
            FaultSpec::MixedEcc {
                delta_s: 0.4,
                delta_d: 0.4
            }
        );
    }

    #[test]
    fn out_of_range_ratio_rejected_naming_bound() {
        let text = r#"{
            "scenarios": [
                {"name": "healthy", "fault": {"type": "healthy"}},
                {"name": "bad", "fault": {"type": "static_ecc", "delta_s": 1.2}}
            ]
        }"#;
        let err = parse_scenario(text).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("[0, 1)"),
            "message should name the bound: {msg}"
        );
    }

    #[test]
    fn unknown_key_rejected_by_name() {
        let err = parse_scenario(r#"{"motor": {"airgap_cm": 2}}"#).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("airgap_cm"),
            "message should name the key: {msg}"
        );
    }

    #[test]
    fn millimetre_overrides_convert() {
        let config =
            parse_scenario(r#"{"motor": {"core_length_mm": 300.0, "tooth_height_mm": 25.0}}"#)
                .unwrap();
        assert!((config.motor.core_length_m - 0.3).abs() < 1e-15);
        assert!((config.motor.tooth_height_m - 0.025).abs() < 1e-15);
    }

    #[test]
    fn report_without_baseline_rejected() {
        let text = r#"{
            "scenarios": [{"name": "de", "fault": {"type": "de", "delta_d": 0.4}}],
            "outputs": {"report": true}
        }"#;
        assert!(parse_scenario(text).is_err());
    }

    #[test]
    fn duplicate_and_invalid_names_rejected() {
        let text = r#"{"scenarios": [
            {"name": "healthy", "fault": {"type": "healthy"}},
            {"name": "healthy", "fault": {"type": "healthy"}}
        ]}"#;
        assert!(parse_scenario(text).is_err());
        let text = r#"{"scenarios": [{"name": "bad name", "fault": {"type": "healthy"}}]}"#;
        assert!(parse_scenario(text).is_err());
    }

    #[test]
    fn matrix8_is_valid_and_has_eight_scenarios() {
        let config = ScenarioConfig::matrix8();
        config.validate().unwrap();
        assert_eq!(config.scenarios.len(), 8);
        assert_eq!(config.baseline_index(), Some(0));
    }

    #[test]
    fn sim_overrides_merge_with_defaults() {
        let config = parse_scenario(r#"{"sim": {"mechanical_periods": 4}}"#).unwrap();
        assert_eq!(config.sim.mechanical_periods, 4);
        assert_eq!(config.sim.samples_per_period, 4096);
    }
}
