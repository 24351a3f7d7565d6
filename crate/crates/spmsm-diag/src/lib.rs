//! Fault-signature simulation and diagnosis for surface-mounted permanent
//! magnet synchronous motors.
//!
//! The crate synthesizes per-phase flux linkage, back-EMF, current, and
//! electromagnetic torque for a 62 kW SPMSM under airgap eccentricity and
//! demagnetization faults, using an analytical permeance surrogate instead of
//! a field solver, then diagnoses the fault class from FFT sideband
//! amplitudes of the back-EMF:
//!
//! - **[`motor`]** — machine/vehicle parameter sets and the sizing relations
//!   (operating point, slot/tooth sections, magnet height, yoke thickness).
//! - **[`fault`]** — fault descriptions, airgap width under static/dynamic/
//!   mixed eccentricity, the rectangular PM field pattern and its
//!   demagnetization edits, and the characteristic frequency patterns.
//! - **[`synth`]** — waveform synthesis, back-EMF differentiation, torque,
//!   ripple and amplitude-variation metrics, and the flux/EMF calibration.
//! - **[`spectral`]** — single-sided dB spectra, sideband extraction, and
//!   scenario-by-frequency harmonic tables.
//! - **[`diagnosis`]** — baseline deltas and the rule-based classifier.
//! - **[`config`]** / **[`runner`]** — JSON scenario configs and the batch
//!   runner that writes CSV, JSON, and SVG outputs.
//!
//! # Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! examples/
//! ├── motor_sizing.rs            # operating point + geometry sizing
//! ├── healthy_baseline.rs        # calibration targets on the healthy machine
//! ├── eccentricity_signatures.rs # SE/DE/ME waveform metrics vs healthy
//! ├── demag_signatures.rs        # uniform + partial demagnetization effects
//! ├── spectrum_sidebands.rs      # spectra and sideband extraction
//! ├── classify_matrix.rs         # in-memory eight-scenario study + labels
//! └── scenario_runner.rs         # config file -> output directory
//! ```
//!
//! Run one with `cargo run --example classify_matrix`.
//!
//! A minimal in-memory pipeline:
//!
//! ```
//! use spmsm_diag::fault::{fault_frequency_pattern, FaultSpec, PatternKind};
//! use spmsm_diag::motor::MotorSpec;
//! use spmsm_diag::spectral::{asbc, spectrum};
//! use spmsm_diag::synth::{synthesize_waveforms, SimConfig};
//!
//! let motor = MotorSpec::default();
//! let sim = SimConfig { mechanical_periods: 2, samples_per_period: 1024, ..SimConfig::default() };
//! let set = synthesize_waveforms(&motor, &FaultSpec::DynamicEcc { delta_d: 0.4 }, &sim).unwrap();
//! let spec = spectrum(&set.back_emf[0]).unwrap();
//! let pattern = fault_frequency_pattern(PatternKind::Eccentricity, 188.3, 4, 4).unwrap();
//! let sidebands = asbc(&spec, &pattern).unwrap();
//! assert_eq!(sidebands.entries.len(), 6);
//! ```

pub mod config;
pub mod diagnosis;
pub mod error;
pub mod fault;
pub mod motor;
pub mod plot;
pub mod runner;
pub mod spectral;
pub mod synth;

pub use config::{load_scenario, parse_scenario, OutputSelection, Scenario, ScenarioConfig};
pub use diagnosis::{
    baseline_delta, classify, rank_pd_variants, DeltaVector, DiagnosisReport, FaultLabel,
    Thresholds,
};
pub use error::{Error, Result};
pub use fault::{
    airgap_width, fault_frequency_pattern, mixed_ecc_ratio, pm_flux_density,
    pm_fourier_coefficient, sideband_columns, FaultSpec, FrequencyPattern, PMFieldModel,
    PatternKind,
};
pub use motor::{
    size_rotor_geometry, size_stator_geometry, vehicle_operating_point, MotorSpec, OperatingPoint,
    RotorGeometry, StatorGeometry, VehicleSpec,
};
pub use runner::{run, RunManifest, ScenarioOutcome};
pub use spectral::{asbc, harmonic_table, spectrum, AsbcVector, HarmonicTable, Spectrum};
pub use synth::{
    amplitude_variation, back_emf, calibrate, em_torque, peak_to_peak_ripple, synthesize_waveforms,
    tone_component, Calibration, SimConfig, Unit, Waveform, WaveformSet, EMF_TARGET_V,
    FLUX_TARGET_WB,
};
