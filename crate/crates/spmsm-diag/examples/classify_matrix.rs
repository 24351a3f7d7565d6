//! The full in-memory pipeline over the standard eight-scenario study:
//! synthesis, spectra, the harmonic table, and a diagnosis per scenario.
//!
//! ```bash
//! cargo run --release --example classify_matrix
//! ```

use spmsm_diag::config::ScenarioConfig;
use spmsm_diag::diagnosis::{baseline_delta, classify, Thresholds};
use spmsm_diag::fault::{fault_frequency_pattern, PatternKind};
use spmsm_diag::spectral::{asbc, harmonic_table, spectrum, Spectrum};
use spmsm_diag::synth::synthesize_waveforms;

fn main() {
    let config = ScenarioConfig::matrix8();
    let pattern = fault_frequency_pattern(
        PatternKind::Eccentricity,
        config.motor.supply_frequency_hz,
        config.motor.pole_pairs,
        4,
    )
    .unwrap();

    let mut spectra: Vec<(String, Spectrum)> = Vec::new();
    for scenario in &config.scenarios {
        let set = synthesize_waveforms(&config.motor, &scenario.fault, &config.sim).unwrap();
        spectra.push((scenario.name.clone(), spectrum(&set.back_emf[0]).unwrap()));
    }
    let rows: Vec<(String, &Spectrum)> = spectra.iter().map(|(n, s)| (n.clone(), s)).collect();
    let table = harmonic_table(&rows, &pattern).unwrap();
    println!("harmonic table (dB):\n{}", table.to_csv());

    let healthy = asbc(&spectra[0].1, &pattern).unwrap();
    let thresholds = Thresholds::default();
    println!("diagnoses with thresholds {thresholds:?}:");
    for (name, spec) in &spectra[1..] {
        let v = asbc(spec, &pattern).unwrap();
        let deltas = baseline_delta(&v, &healthy).unwrap();
        let report = classify(&deltas, &thresholds);
        println!(
            "  {name:<22} -> {:<13} severity {:+.2} dB",
            report.label.to_string(),
            report.severity_db
        );
        for note in &report.notes {
            println!("      {note}");
        }
    }
}
