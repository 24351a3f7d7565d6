//! Acceptance suite: one test per acceptance criterion, each printing a
//! `[PASS] criterion N` line with the measured values. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;
use std::time::Instant;

use spmsm_diag::config::ScenarioConfig;
use spmsm_diag::diagnosis::{baseline_delta, classify, FaultLabel, Thresholds};
use spmsm_diag::fault::{
    airgap_width, fault_frequency_pattern, mixed_ecc_ratio, pm_flux_density,
    pm_fourier_coefficient, FaultSpec, PMFieldModel, PatternKind,
};
use spmsm_diag::motor::MotorSpec;
use spmsm_diag::spectral::{asbc, spectrum, AsbcVector, HarmonicTable, Spectrum};
use spmsm_diag::synth::{
    amplitude_variation, back_emf, em_torque, peak_to_peak_ripple, synthesize_waveforms,
    tone_component, SimConfig, Unit, Waveform, WaveformSet, EMF_TARGET_V, FLUX_TARGET_WB,
};

const SIDEBANDS_HZ: [f64; 6] = [47.075, 141.225, 235.375, 329.525, 423.675, 517.825];
const HALF_BIN_HZ: f64 = 0.736;
const SUPPLY_HZ: f64 = 188.3;

struct MatrixData {
    elapsed_s: f64,
    names: Vec<String>,
    sets: Vec<WaveformSet>,
    spectra: Vec<Spectrum>,
    sidebands: Vec<AsbcVector>,
}

static MATRIX: OnceLock<MatrixData> = OnceLock::new();

/// The default eight-scenario study, synthesized once and shared.
fn matrix() -> &'static MatrixData {
    MATRIX.get_or_init(|| {
        let config = ScenarioConfig::matrix8();
        let pattern = fault_frequency_pattern(PatternKind::Eccentricity, SUPPLY_HZ, 4, 4).unwrap();
        let started = Instant::now();
        let mut names = Vec::new();
        let mut sets = Vec::new();
        let mut spectra = Vec::new();
        let mut sidebands = Vec::new();
        for scenario in &config.scenarios {
            let set = synthesize_waveforms(&config.motor, &scenario.fault, &config.sim).unwrap();
            let spec = spectrum(&set.back_emf[0]).unwrap();
            sidebands.push(asbc(&spec, &pattern).unwrap());
            names.push(scenario.name.clone());
            sets.push(set);
            spectra.push(spec);
        }
        MatrixData {
            elapsed_s: started.elapsed().as_secs_f64(),
            names,
            sets,
            spectra,
            sidebands,
        }
    })
}

fn index_of(data: &MatrixData, name: &str) -> usize {
    data.names.iter().position(|n| n == name).unwrap()
}

fn pass(criterion: u32, detail: &str) {
    println!("[PASS] criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_sideband_placement_and_runtime() {
    let data = matrix();
    let healthy = &data.sidebands[index_of(data, "healthy")];
    for name in [
        "static_ecc_40",
        "dynamic_ecc_40",
        "mixed_ecc_40_40",
        "pd_uniform_pole_25",
        "pd_graded_pole_25",
        "pd_shortened_arc_25",
    ] {
        let v = &data.sidebands[index_of(data, name)];
        assert_eq!(v.entries.len(), 6, "{name}: six sideband columns");
        let mut best_rise = f64::NEG_INFINITY;
        for (entry, (&target, healthy_entry)) in v
            .entries
            .iter()
            .zip(SIDEBANDS_HZ.iter().zip(&healthy.entries))
        {
            assert!(
                (entry.matched_bin_frequency_hz - target).abs() <= HALF_BIN_HZ,
                "{name}: sideband at {} Hz, expected {target} Hz",
                entry.matched_bin_frequency_hz
            );
            best_rise = best_rise.max(entry.amplitude_db - healthy_entry.amplitude_db);
        }
        assert!(
            best_rise >= 10.0,
            "{name}: strongest sideband rise {best_rise:.2} dB must reach 10 dB"
        );
    }
    assert!(
        data.elapsed_s < 10.0,
        "eight-scenario run took {:.2} s, budget 10 s",
        data.elapsed_s
    );
    pass(
        1,
        &format!(
            "fractional sidebands sit on the six pattern bins (±{HALF_BIN_HZ} Hz) for every \
             eccentricity/PD scenario; 8-scenario run took {:.2} s < 10 s",
            data.elapsed_s
        ),
    );
}

#[test]
fn criterion_02_healthy_support() {
    let data = matrix();
    let spec = &data.spectra[index_of(data, "healthy")];
    let fund = spec.amplitude_db_at(SUPPLY_HZ).unwrap();
    let cutoff = fund - 60.0;
    let healthy_asbc = &data.sidebands[index_of(data, "healthy")];
    let mut worst_gap = f64::INFINITY;
    for entry in &healthy_asbc.entries {
        worst_gap = worst_gap.min(fund - entry.amplitude_db);
        assert!(
            entry.amplitude_db <= cutoff,
            "fractional ASBC at {} Hz is only {:.2} dB below the fundamental",
            entry.target_frequency_hz,
            fund - entry.amplitude_db
        );
    }
    for (freq, amp) in spec.bins() {
        if amp > cutoff {
            let harmonic = freq / SUPPLY_HZ;
            let nearest_odd = 2.0 * ((harmonic - 1.0) / 2.0).round() + 1.0;
            assert!(
                (harmonic - nearest_odd).abs() < 1e-6,
                "healthy energy at {freq} Hz ({amp:.2} dB) is not an odd supply harmonic"
            );
        }
    }
    pass(
        2,
        &format!(
            "healthy EMF support confined to odd supply harmonics; fractional ASBCs sit \
             {worst_gap:.1} dB below the fundamental (>= 60 dB)"
        ),
    );
}

#[test]
fn criterion_03_uniform_demag_support_and_attenuation() {
    let data = matrix();
    let healthy_spec = &data.spectra[index_of(data, "healthy")];
    let motor = MotorSpec::default();
    let sim = SimConfig::default();
    let ud =
        synthesize_waveforms(&motor, &FaultSpec::UniformDemag { severity: 0.5 }, &sim).unwrap();
    let ud_spec = spectrum(&ud.back_emf[0]).unwrap();

    let support = |s: &Spectrum| -> Vec<usize> {
        let cutoff = s.amplitude_db_at(SUPPLY_HZ).unwrap() - 60.0;
        s.amplitudes_db
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > cutoff)
            .map(|(k, _)| k)
            .collect()
    };
    assert_eq!(
        support(healthy_spec),
        support(&ud_spec),
        "uniform demagnetization must not change the spectral support"
    );
    let shift = ud_spec.amplitude_db_at(SUPPLY_HZ).unwrap()
        - healthy_spec.amplitude_db_at(SUPPLY_HZ).unwrap();
    let expected = 20.0 * 0.5_f64.log10();
    assert!(
        (shift - expected).abs() <= 0.01,
        "fundamental shift {shift:.4} dB, expected {expected:.4} +/- 0.01 dB"
    );
    pass(
        3,
        &format!(
            "M=0.5 leaves the support identical and shifts the fundamental by {shift:.4} dB \
             (expected {expected:.4} +/- 0.01)"
        ),
    );
}

#[test]
fn criterion_04_calibration_targets() {
    let data = matrix();
    let healthy = &data.sets[index_of(data, "healthy")];
    let (flux_peak, _) = tone_component(&healthy.flux_linkage[0], SUPPLY_HZ);
    let (emf_peak, _) = tone_component(&healthy.back_emf[0], SUPPLY_HZ);
    let torque = healthy.torque.mean();
    assert!(
        (flux_peak - FLUX_TARGET_WB).abs() <= 0.02 * FLUX_TARGET_WB,
        "flux fundamental {flux_peak} Wb vs target {FLUX_TARGET_WB} +/- 2%"
    );
    assert!(
        (emf_peak - EMF_TARGET_V).abs() <= 0.02 * EMF_TARGET_V,
        "EMF fundamental {emf_peak} V vs target {EMF_TARGET_V} +/- 2%"
    );
    assert!(
        (torque - 210.0).abs() <= 0.05 * 210.0,
        "mean torque {torque} N*m vs target 210 +/- 5%"
    );
    pass(
        4,
        &format!(
            "healthy run: flux fundamental {flux_peak:.5} Wb, EMF fundamental {emf_peak:.1} V, \
             mean torque {torque:.1} N*m"
        ),
    );
}

#[test]
fn criterion_05_fault_severity_orderings() {
    let data = matrix();
    let healthy = &data.sets[index_of(data, "healthy")];

    // Machine-level flux variation: mean of the per-phase departures.
    let flux_var = |name: &str| -> f64 {
        let set = &data.sets[index_of(data, name)];
        (0..3)
            .map(|k| amplitude_variation(&set.flux_linkage[k], &healthy.flux_linkage[k]).unwrap())
            .sum::<f64>()
            / 3.0
    };
    let se = flux_var("static_ecc_40");
    let de = flux_var("dynamic_ecc_40");
    let me = flux_var("mixed_ecc_40_40");
    assert!(
        me > de && de > se,
        "flux variation ordering ME {me:.2}% > DE {de:.2}% > SE {se:.2}% violated"
    );

    let ripple = |name: &str| peak_to_peak_ripple(&data.sets[index_of(data, name)].torque).unwrap();
    let r_healthy = ripple("healthy");
    let r_se = ripple("static_ecc_40");
    let r_de = ripple("dynamic_ecc_40");
    let r_me = ripple("mixed_ecc_40_40");
    assert!(
        r_me > r_de && r_de > r_se && r_se > r_healthy,
        "torque ripple ordering ME {r_me:.2} > DE {r_de:.2} > SE {r_se:.2} > healthy \
         {r_healthy:.2} violated"
    );

    let pd_uniform = flux_var("pd_uniform_pole_25");
    let pd_graded = flux_var("pd_graded_pole_25");
    let pd_arc = flux_var("pd_shortened_arc_25");
    assert!(
        pd_graded < pd_uniform && pd_graded < pd_arc,
        "graded-pole variation {pd_graded:.2}% must be the smallest of \
         ({pd_uniform:.2}%, {pd_arc:.2}%)"
    );

    let t_healthy = healthy.torque.mean();
    for name in [
        "pd_uniform_pole_25",
        "pd_graded_pole_25",
        "pd_shortened_arc_25",
    ] {
        let t = data.sets[index_of(data, name)].torque.mean();
        assert!(
            t < t_healthy,
            "{name}: mean torque {t:.1} must drop below {t_healthy:.1}"
        );
    }
    pass(
        5,
        &format!(
            "flux variation ME {me:.1}% > DE {de:.1}% > SE {se:.1}%; torque ripple \
             {r_me:.1} > {r_de:.1} > {r_se:.1} > {r_healthy:.1}%; graded-pole variation \
             smallest ({pd_graded:.1}% vs {pd_uniform:.1}%/{pd_arc:.1}%); PD torque < healthy"
        ),
    );
}

#[test]
fn criterion_06_fourier_oracle() {
    let motor = MotorSpec::default();
    let model = PMFieldModel::for_motor(&motor, 1.0).unwrap();
    let p = motor.pole_pairs;
    let arc = motor.magnet_arc_angle_rad;
    let pitch = PI / p as f64;
    let nodes_per_arc = 1 << 19;
    let mut worst = 0.0_f64;
    for n in (1..=25).step_by(2) {
        let nf = n as f64;
        let mut integral = 0.0;
        for k in 0..2 * p {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let centre = (k as f64 + 0.5) * pitch;
            let (a, b) = (centre - arc / 2.0, centre + arc / 2.0);
            let h = (b - a) / nodes_per_arc as f64;
            let mut acc = 0.0;
            for i in 0..=nodes_per_arc {
                let theta = a + i as f64 * h;
                let w = if i == 0 || i == nodes_per_arc {
                    0.5
                } else {
                    1.0
                };
                acc += w * (nf * p as f64 * theta).sin();
            }
            integral += sign * acc * h;
        }
        let numeric = integral / PI;
        let closed = pm_fourier_coefficient(n, &model).unwrap();
        let err = (closed - numeric).abs() / 1.0_f64.max(closed.abs());
        worst = worst.max(err);
        assert!(err <= 1e-9, "n={n}: closed {closed} vs trapezoid {numeric}");
    }
    for n in (2..=24).step_by(2) {
        assert_eq!(pm_fourier_coefficient(n, &model).unwrap(), 0.0);
    }
    pass(
        6,
        &format!(
            "closed-form magnet harmonics match the trapezoid oracle for n=1..25 (worst \
             relative error {worst:.2e} <= 1e-9); even orders are exactly zero"
        ),
    );
}

#[test]
fn criterion_07_spectral_oracle() {
    let f_mech = SUPPLY_HZ / 4.0;
    let rate = 4096.0 * f_mech;
    let n = 8 * 4096;
    let samples: Vec<f64> = (0..n)
        .map(|j| {
            let t = j as f64 / rate;
            10.0 * (TAU * 47.075 * t).cos() + (TAU * 141.225 * t).cos()
        })
        .collect();
    let w = Waveform::new(samples, rate, 0.0, Unit::Volt);
    let spec = spectrum(&w).unwrap();
    let pattern = fault_frequency_pattern(PatternKind::Eccentricity, SUPPLY_HZ, 4, 4).unwrap();
    let v = asbc(&spec, &pattern).unwrap();
    let err0 = (v.entries[0].amplitude_db - 20.0).abs();
    let err1 = (v.entries[1].amplitude_db - 0.0).abs();
    assert!(
        err0 <= 0.01 && err1 <= 0.01,
        "two-tone ASBC errors {err0}, {err1}"
    );

    let time_energy: f64 = w.samples.iter().map(|x| x * x).sum();
    let last = spec.amplitudes_db.len() - 1;
    let mut spec_energy = 0.0;
    for (k, &db) in spec.amplitudes_db.iter().enumerate() {
        let amp = 10.0_f64.powf(db / 20.0);
        let mag = if k == 0 {
            amp * n as f64
        } else {
            amp * n as f64 / 2.0
        };
        let weight = if k == 0 || k == last { 1.0 } else { 2.0 };
        spec_energy += weight * mag * mag;
    }
    spec_energy /= n as f64;
    let parseval = (time_energy - spec_energy).abs() / time_energy;
    assert!(parseval <= 1e-9, "Parseval mismatch {parseval}");
    pass(
        7,
        &format!(
            "two-tone ASBCs recovered within {:.1e}/{:.1e} dB; Parseval holds to {parseval:.1e}",
            err0, err1
        ),
    );
}

#[test]
fn criterion_08_classifier_calibration_contract() {
    let fixture = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/tests/data/emf_harmonics_62kw.csv"
    );
    let table = HarmonicTable::from_csv(&std::fs::read_to_string(fixture).unwrap()).unwrap();
    let healthy = table.row_as_vector("healthy").unwrap();
    let expected = [
        ("healthy", FaultLabel::Healthy),
        ("static_ecc", FaultLabel::StaticEcc),
        ("dynamic_ecc", FaultLabel::DynamicEcc),
        ("mixed_ecc", FaultLabel::MixedEcc),
        ("pd_uniform_pole", FaultLabel::PartialDemag),
        ("pd_graded_pole", FaultLabel::PartialDemag),
        ("pd_shortened_arc", FaultLabel::PartialDemag),
    ];
    for (name, want) in expected {
        let row = table.row_as_vector(name).unwrap();
        let deltas = baseline_delta(&row, &healthy).unwrap();
        let got = classify(&deltas, &Thresholds::default()).label;
        assert_eq!(got, want, "table row {name}");
    }

    // Same contract through the CLI surface.
    let output = std::process::Command::new(env!("CARGO_BIN_EXE_spmsm-diag"))
        .args(["classify", "--table", fixture])
        .output()
        .expect("classify subcommand runs");
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    for (name, want) in expected {
        let line = stdout
            .lines()
            .find(|l| l.starts_with(name))
            .unwrap_or_else(|| panic!("no output line for {name}"));
        assert!(
            line.contains(&want.to_string()),
            "CLI line for {name}: {line}"
        );
    }
    pass(
        8,
        "published harmonic-table rows classify to their labels with default thresholds, \
         both in-library and through `classify --table`",
    );
}

#[test]
fn criterion_09_end_to_end_self_consistency() {
    let data = matrix();
    let healthy = &data.sidebands[index_of(data, "healthy")];
    let thresholds = Thresholds::default();
    let label_of = |name: &str| -> FaultLabel {
        let deltas = baseline_delta(&data.sidebands[index_of(data, name)], healthy).unwrap();
        classify(&deltas, &thresholds).label
    };

    let healthy_self = baseline_delta(healthy, healthy).unwrap();
    assert_eq!(
        classify(&healthy_self, &thresholds).label,
        FaultLabel::Healthy
    );

    assert_eq!(label_of("static_ecc_40"), FaultLabel::StaticEcc);
    assert_eq!(label_of("dynamic_ecc_40"), FaultLabel::DynamicEcc);
    // The mixed case must land in an eccentricity class. Its lowest-sideband
    // excess over the dynamic case is third-order in the offsets here, so the
    // mixed/dynamic split is not robust for a permeance surrogate and the
    // exact label is not asserted.
    let me = label_of("mixed_ecc_40_40");
    assert!(
        matches!(
            me,
            FaultLabel::StaticEcc | FaultLabel::DynamicEcc | FaultLabel::MixedEcc
        ),
        "mixed eccentricity classified {me}, expected an eccentricity class"
    );

    // Uniform demagnetization: healthy support, uniformly attenuated.
    let ud_deltas =
        baseline_delta(&data.sidebands[index_of(data, "uniform_demag_25")], healthy).unwrap();
    assert_eq!(classify(&ud_deltas, &thresholds).label, FaultLabel::Healthy);
    let ud_fund = data.spectra[index_of(data, "uniform_demag_25")]
        .amplitude_db_at(SUPPLY_HZ)
        .unwrap();
    let healthy_fund = data.spectra[index_of(data, "healthy")]
        .amplitude_db_at(SUPPLY_HZ)
        .unwrap();
    let attenuation = ud_fund - healthy_fund;
    assert!(
        attenuation < -3.0,
        "uniform demag must attenuate the fundamental, got {attenuation:.2} dB"
    );

    for name in [
        "pd_uniform_pole_25",
        "pd_graded_pole_25",
        "pd_shortened_arc_25",
    ] {
        assert_eq!(label_of(name), FaultLabel::PartialDemag, "{name}");
    }
    pass(
        9,
        &format!(
            "self-synthesized matrix recovers healthy/StaticEcc/DynamicEcc/PartialDemag \
             labels; mixed eccentricity lands in eccentricity class {me}; uniform demag \
             reads healthy-support with the fundamental attenuated {attenuation:.1} dB"
        ),
    );
}

#[test]
fn criterion_10_degenerate_identity_suite() {
    let motor = MotorSpec::default();
    for fault in [
        FaultSpec::StaticEcc { delta_s: 0.0 },
        FaultSpec::DynamicEcc { delta_d: 0.0 },
        FaultSpec::MixedEcc {
            delta_s: 0.0,
            delta_d: 0.0,
        },
    ] {
        for i in 0..32 {
            let theta = TAU * i as f64 / 32.0;
            let g = airgap_width(&fault, theta, 0.0031 * i as f64, &motor).unwrap();
            assert!((g - motor.airgap_m).abs() < 1e-15);
        }
    }
    assert_eq!(mixed_ecc_ratio(0.4, 0.4, PI), 0.0);

    let model = PMFieldModel::for_motor(&motor, 1.16).unwrap();
    for i in 0..4096 {
        let theta = TAU * i as f64 / 4096.0;
        let healthy = pm_flux_density(&FaultSpec::Healthy, &model, theta).unwrap();
        let unit_demag =
            pm_flux_density(&FaultSpec::UniformDemag { severity: 1.0 }, &model, theta).unwrap();
        assert_eq!(healthy, unit_demag);
    }

    let flux = Waveform::new(vec![0.42; 512], 1000.0, 0.0, Unit::Weber);
    let emf = back_emf(&flux, 100).unwrap();
    assert!(emf.samples.iter().all(|&e| e == 0.0));

    let volts = Waveform::new(vec![697.0; 512], 1000.0, 0.0, Unit::Volt);
    let amps = Waveform::new(vec![0.0; 512], 1000.0, 0.0, Unit::Ampere);
    let torque = em_torque(
        &[volts.clone(), volts.clone(), volts],
        &[amps.clone(), amps.clone(), amps],
        295.8,
    )
    .unwrap();
    assert!(torque.samples.iter().all(|&t| t == 0.0));
    pass(
        10,
        "zero-offset gaps are uniform, opposed offsets cancel, M=1 is pointwise healthy, \
         constant flux gives zero EMF, zero currents give zero torque",
    );
}

#[test]
fn criterion_11_determinism_across_worker_counts() {
    let base = ScenarioConfig::matrix8();
    let dirs = [tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap()];
    let worker_counts = [1usize, 4usize];
    let mut manifests = Vec::new();
    for (dir, workers) in dirs.iter().zip(worker_counts) {
        let config = ScenarioConfig {
            output_dir: dir.path().to_path_buf(),
            workers,
            ..base.clone()
        };
        manifests.push(spmsm_diag::runner::run(&config).unwrap());
    }
    assert_eq!(manifests[0].failed, 0);

    let mut names: Vec<String> = std::fs::read_dir(dirs[0].path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != "manifest.json")
        .collect();
    names.sort();
    assert!(
        names.iter().any(|n| n.ends_with("_waveforms.csv")),
        "run must emit waveform CSVs"
    );
    let mut compared = 0;
    for name in &names {
        let a = std::fs::read(dirs[0].path().join(name)).unwrap();
        let b = std::fs::read(dirs[1].path().join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between worker counts 1 and 4");
        compared += 1;
    }
    pass(
        11,
        &format!("{compared} data files byte-identical across worker counts 1 and 4"),
    );
}
