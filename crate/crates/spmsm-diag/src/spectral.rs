//! Single-sided amplitude spectra in decibels and sideband extraction.
//!
//! The simulator captures an integer number of mechanical periods with a
//! rectangular window, so every characteristic frequency lands exactly on a
//! bin and leakage is structurally zero; the sideband extractor still matches
//! to the nearest bin to tolerate off-grid configurations.

use rustfft::{num_complex::Complex, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fault::FrequencyPattern;
use crate::synth::Waveform;

/// Amplitudes below this clamp to the dB floor.
pub const AMPLITUDE_FLOOR: f64 = 1e-12;
/// Floor value in dB re 1 V.
pub const DB_FLOOR: f64 = -240.0;

/// Single-sided amplitude spectrum in dB re 1 V, rectangular window.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// One value per bin from DC to Nyquist inclusive.
    pub amplitudes_db: Vec<f64>,
    /// Bin spacing: sample rate over transform length, Hz.
    pub resolution_hz: f64,
}

impl Spectrum {
    /// Frequency of bin `k`, exactly `k · resolution`.
    pub fn bin_frequency(&self, k: usize) -> f64 {
        k as f64 * self.resolution_hz
    }

    /// Highest representable frequency.
    pub fn nyquist_hz(&self) -> f64 {
        (self.amplitudes_db.len() as f64 - 1.0) * self.resolution_hz
    }

    /// Amplitude in dB at the bin nearest to `freq_hz`.
    pub fn amplitude_db_at(&self, freq_hz: f64) -> Option<f64> {
        let k = (freq_hz / self.resolution_hz).round();
        if k < 0.0 || k as usize >= self.amplitudes_db.len() {
            return None;
        }
        Some(self.amplitudes_db[k as usize])
    }

    /// `(frequency, amplitude)` pairs for every bin.
    pub fn bins(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.amplitudes_db
            .iter()
            .enumerate()
            .map(|(k, &a)| (self.bin_frequency(k), a))
    }
}

/// Amplitude of sideband components at the pattern frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsbcEntry {
    pub target_frequency_hz: f64,
    pub matched_bin_frequency_hz: f64,
    pub amplitude_db: f64,
}

/// One scenario's sideband amplitudes, ordered like the pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsbcVector {
    pub entries: Vec<AsbcEntry>,
}

impl AsbcVector {
    pub fn amplitudes_db(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.amplitude_db).collect()
    }

    pub fn frequencies_hz(&self) -> Vec<f64> {
        self.entries.iter().map(|e| e.target_frequency_hz).collect()
    }

    /// Build a vector directly from frequency/amplitude pairs (e.g. rows of
    /// an externally supplied harmonic table).
    pub fn from_pairs(pairs: &[(f64, f64)]) -> Self {
        Self {
            entries: pairs
                .iter()
                .map(|&(f, a)| AsbcEntry {
                    target_frequency_hz: f,
                    matched_bin_frequency_hz: f,
                    amplitude_db: a,
                })
                .collect(),
        }
    }

    pub fn same_columns(&self, other: &AsbcVector) -> bool {
        self.entries.len() == other.entries.len()
            && self.entries.iter().zip(&other.entries).all(|(a, b)| {
                let scale = a.target_frequency_hz.abs().max(1.0);
                (a.target_frequency_hz - b.target_frequency_hz).abs() <= 1e-9 * scale
            })
    }
}

/// Scenario-by-frequency table of sideband amplitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarmonicTable {
    /// Shared frequency columns in Hz.
    pub frequencies_hz: Vec<f64>,
    /// `(scenario label, amplitudes in dB)` rows in insertion order.
    pub rows: Vec<(String, Vec<f64>)>,
}

impl HarmonicTable {
    pub fn row(&self, label: &str) -> Option<&[f64]> {
        self.rows
            .iter()
            .find(|(name, _)| name == label)
            .map(|(_, v)| v.as_slice())
    }

    pub fn row_as_vector(&self, label: &str) -> Option<AsbcVector> {
        self.row(label).map(|amps| {
            AsbcVector::from_pairs(
                &self
                    .frequencies_hz
                    .iter()
                    .cloned()
                    .zip(amps.iter().cloned())
                    .collect::<Vec<_>>(),
            )
        })
    }

    /// Render as CSV: `scenario` first, then one column per frequency.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("scenario");
        for f in &self.frequencies_hz {
            out.push(',');
            out.push_str(&f.to_string());
        }
        out.push('\n');
        for (label, amps) in &self.rows {
            out.push_str(label);
            for a in amps {
                out.push(',');
                out.push_str(&a.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Parse the CSV layout produced by [`HarmonicTable::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("empty harmonic table".into()))?;
        let mut cols = header.split(',');
        let first = cols.next().unwrap_or_default().trim();
        if first != "scenario" {
            return Err(Error::InvalidInput(format!(
                "harmonic table header must start with 'scenario', got '{first}'"
            )));
        }
        let frequencies_hz = cols
            .map(|c| {
                c.trim().parse::<f64>().map_err(|_| {
                    Error::InvalidInput(format!("bad frequency column '{c}' in header"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if frequencies_hz.is_empty() {
            return Err(Error::InvalidInput(
                "harmonic table needs at least one frequency column".into(),
            ));
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let label = fields.next().unwrap_or_default().trim().to_string();
            let amps = fields
                .map(|c| {
                    c.trim().parse::<f64>().map_err(|_| {
                        Error::InvalidInput(format!("bad amplitude '{c}' on line {}", lineno + 1))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if amps.len() != frequencies_hz.len() {
                return Err(Error::InvalidInput(format!(
                    "row '{label}' has {} values for {} columns",
                    amps.len(),
                    frequencies_hz.len()
                )));
            }
            rows.push((label, amps));
        }
        Ok(Self {
            frequencies_hz,
            rows,
        })
    }
}

/// Discrete Fourier transform of a waveform into a single-sided amplitude
/// spectrum in dB re 1 V.
///
/// Bin `k > 0` carries `2|X_k|/N`, DC carries `|X_0|/N`; amplitudes below
/// [`AMPLITUDE_FLOOR`] clamp to [`DB_FLOOR`]. The length must be a power of
/// two (the sim config guarantees it for synthesized waveforms).
pub fn spectrum(w: &Waveform) -> Result<Spectrum> {
    let n = w.samples.len();
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::InvalidInput(format!(
            "spectrum length must be a power of two >= 2, got {n}"
        )));
    }
    let mut buf: Vec<Complex<f64>> = w.samples.iter().map(|&x| Complex::new(x, 0.0)).collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let nf = n as f64;
    let amplitudes_db = (0..=n / 2)
        .map(|k| {
            let mag = buf[k].norm();
            let amp = if k == 0 { mag / nf } else { 2.0 * mag / nf };
            if amp < AMPLITUDE_FLOOR {
                DB_FLOOR
            } else {
                20.0 * amp.log10()
            }
        })
        .collect();
    Ok(Spectrum {
        amplitudes_db,
        resolution_hz: w.sample_rate_hz / nf,
    })
}

/// Extract the sideband amplitudes at the pattern frequencies.
///
/// Each target is matched to its nearest bin; with the default capture the
/// match is exact. Targets above Nyquist are an error naming the frequency.
pub fn asbc(spectrum: &Spectrum, pattern: &FrequencyPattern) -> Result<AsbcVector> {
    let nyquist = spectrum.nyquist_hz();
    let mut entries = Vec::with_capacity(pattern.frequencies_hz.len());
    for &target in &pattern.frequencies_hz {
        if target > nyquist {
            return Err(Error::OutOfBand {
                frequency_hz: target,
                nyquist_hz: nyquist,
            });
        }
        let k = (target / spectrum.resolution_hz).round() as usize;
        let matched = spectrum.bin_frequency(k);
        debug_assert!((target - matched).abs() <= spectrum.resolution_hz / 2.0 + 1e-9);
        entries.push(AsbcEntry {
            target_frequency_hz: target,
            matched_bin_frequency_hz: matched,
            amplitude_db: spectrum.amplitudes_db[k],
        });
    }
    Ok(AsbcVector { entries })
}

/// Assemble one ASBC row per scenario over shared frequency columns.
pub fn harmonic_table(
    scenarios: &[(String, &Spectrum)],
    pattern: &FrequencyPattern,
) -> Result<HarmonicTable> {
    if scenarios.is_empty() {
        return Err(Error::InvalidInput(
            "harmonic table needs at least one scenario".into(),
        ));
    }
    let resolution = scenarios[0].1.resolution_hz;
    for (label, s) in scenarios {
        if (s.resolution_hz - resolution).abs() > 1e-12 * resolution {
            return Err(Error::InconsistentScenarios(format!(
                "scenario '{label}' resolution {} Hz differs from {} Hz",
                s.resolution_hz, resolution
            )));
        }
    }
    let mut rows = Vec::with_capacity(scenarios.len());
    for (label, s) in scenarios {
        let vector = asbc(s, pattern)?;
        rows.push((label.clone(), vector.amplitudes_db()));
    }
    Ok(HarmonicTable {
        frequencies_hz: pattern.frequencies_hz.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fault::{fault_frequency_pattern, PatternKind};
    use crate::synth::Unit;
    use std::f64::consts::TAU;

    /// Default-shaped capture: 8 mechanical periods at 47.075 Hz base.
    fn capture(build: impl Fn(f64) -> f64) -> Waveform {
        let f_mech = 188.3 / 4.0;
        let rate = 4096.0 * f_mech;
        let n = 8 * 4096;
        let samples = (0..n).map(|j| build(j as f64 / rate)).collect();
        Waveform::new(samples, rate, 0.0, Unit::Volt)
    }

    #[test]
    fn on_bin_cosine_hits_expected_level() {
        let w = capture(|t| 697.0 * (TAU * 188.3 * t).cos());
        let s = spectrum(&w).unwrap();
        let expected_db = 20.0 * 697.0_f64.log10();
        let at_fund = s.amplitude_db_at(188.3).unwrap();
        assert!(
            (at_fund - expected_db).abs() < 1e-9,
            "{at_fund} vs {expected_db}"
        );
        // Every other bin sits at (or within FFT round-off of) the floor.
        let k_fund = (188.3 / s.resolution_hz).round() as usize;
        for (k, &a) in s.amplitudes_db.iter().enumerate() {
            if k != k_fund {
                assert!(a <= -230.0, "bin {k} leaked: {a}");
            }
        }
    }

    #[test]
    fn zero_waveform_sits_at_floor() {
        let w = capture(|_| 0.0);
        let s = spectrum(&w).unwrap();
        assert!(s.amplitudes_db.iter().all(|&a| a == DB_FLOOR));
    }

    #[test]
    fn non_power_of_two_rejected() {
        let w = Waveform::new(vec![0.0; 1000], 1000.0, 0.0, Unit::Volt);
        assert!(spectrum(&w).is_err());
    }

    #[test]
    fn parseval_identity() {
        let w = capture(|t| 3.0 * (TAU * 188.3 * t).cos() + 0.5 * (TAU * 47.075 * t).sin() + 0.25);
        let s = spectrum(&w).unwrap();
        let time_energy: f64 = w.samples.iter().map(|x| x * x).sum();
        let n = w.samples.len() as f64;
        let last = s.amplitudes_db.len() - 1;
        let mut spec_energy = 0.0;
        for (k, &db) in s.amplitudes_db.iter().enumerate() {
            let amp = 10.0_f64.powf(db / 20.0);
            let mag = if k == 0 { amp * n } else { amp * n / 2.0 };
            let weight = if k == 0 || k == last { 1.0 } else { 2.0 };
            spec_energy += weight * mag * mag;
        }
        spec_energy /= n;
        assert!(
            (time_energy - spec_energy).abs() <= 1e-9 * time_energy,
            "{time_energy} vs {spec_energy}"
        );
    }

    #[test]
    fn two_tone_asbc_recovery() {
        let w = capture(|t| 10.0 * (TAU * 47.075 * t).cos() + 1.0 * (TAU * 141.225 * t).cos());
        let s = spectrum(&w).unwrap();
        let pattern = fault_frequency_pattern(PatternKind::Eccentricity, 188.3, 4, 4).unwrap();
        let v = asbc(&s, &pattern).unwrap();
        assert_eq!(v.entries.len(), 6);
        assert!((v.entries[0].amplitude_db - 20.0).abs() < 0.01);
        assert!((v.entries[1].amplitude_db - 0.0).abs() < 0.01);
        for e in &v.entries {
            assert_eq!(e.target_frequency_hz, e.matched_bin_frequency_hz);
        }
    }

    #[test]
    fn empty_pattern_gives_empty_vector() {
        let w = capture(|_| 1.0);
        let s = spectrum(&w).unwrap();
        let pattern = FrequencyPattern {
            kind: PatternKind::Eccentricity,
            frequencies_hz: vec![],
            k_max: 1,
        };
        assert!(asbc(&s, &pattern).unwrap().entries.is_empty());
    }

    #[test]
    fn out_of_band_target_is_an_error() {
        let w = capture(|_| 1.0);
        let s = spectrum(&w).unwrap();
        let pattern = FrequencyPattern {
            kind: PatternKind::Eccentricity,
            frequencies_hz: vec![1e9],
            k_max: 1,
        };
        match asbc(&s, &pattern) {
            Err(Error::OutOfBand { frequency_hz, .. }) => assert_eq!(frequency_hz, 1e9),
            other => panic!("expected out-of-band error, got {other:?}"),
        }
    }

    #[test]
    fn scaling_shifts_db_uniformly() {
        let base = capture(|t| (TAU * 188.3 * t).cos() + 0.2 * (TAU * 47.075 * t).cos());
        let scaled = Waveform::new(
            base.samples.iter().map(|x| 10.0 * x).collect(),
            base.sample_rate_hz,
            0.0,
            Unit::Volt,
        );
        let s0 = spectrum(&base).unwrap();
        let s1 = spectrum(&scaled).unwrap();
        for (a, b) in s0.amplitudes_db.iter().zip(&s1.amplitudes_db) {
            if *a > DB_FLOOR {
                assert!((b - a - 20.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn harmonic_table_assembly_and_errors() {
        let w1 = capture(|t| (TAU * 188.3 * t).cos());
        let w2 = capture(|t| 2.0 * (TAU * 188.3 * t).cos());
        let s1 = spectrum(&w1).unwrap();
        let s2 = spectrum(&w2).unwrap();
        let pattern = fault_frequency_pattern(PatternKind::Eccentricity, 188.3, 4, 4).unwrap();

        let single = harmonic_table(&[("healthy".into(), &s1)], &pattern).unwrap();
        assert_eq!(single.rows.len(), 1);
        assert_eq!(single.frequencies_hz.len(), 6);

        let table =
            harmonic_table(&[("healthy".into(), &s1), ("loud".into(), &s2)], &pattern).unwrap();
        assert_eq!(table.rows[0].0, "healthy");
        assert_eq!(table.rows[1].0, "loud");

        let short = Waveform::new(
            w1.samples[..16384].to_vec(),
            w1.sample_rate_hz,
            0.0,
            Unit::Volt,
        );
        let s_short = spectrum(&short).unwrap();
        assert!(matches!(
            harmonic_table(&[("a".into(), &s1), ("b".into(), &s_short)], &pattern),
            Err(Error::InconsistentScenarios(_))
        ));
    }

    #[test]
    fn harmonic_table_csv_round_trip() {
        let table = HarmonicTable {
            frequencies_hz: vec![47.075, 141.225],
            rows: vec![
                ("healthy".into(), vec![-38.64, -38.7]),
                ("mixed_ecc".into(), vec![-32.88, 20.82]),
            ],
        };
        let parsed = HarmonicTable::from_csv(&table.to_csv()).unwrap();
        assert_eq!(parsed, table);
        assert!(HarmonicTable::from_csv("bogus\n1,2\n").is_err());
    }
}
