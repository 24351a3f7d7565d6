//! Rule-based fault classification from sideband amplitudes.
//!
//! Features are the six sideband deltas against the healthy baseline at
//! `(1 ± (2k−1)/p)·f_s`. The decision tree reads, in order:
//!
//! 1. nothing stands out above the detection threshold → healthy;
//! 2. the whole pattern is uniformly elevated → partial demagnetization;
//! 3. strong low-order sidebands: mixed eccentricity when the lowest column
//!    also rises, otherwise dynamic eccentricity;
//! 4. anything else detected → static eccentricity.
//!
//! Thresholds default to values calibrated so that published harmonic tables
//! for this machine class classify correctly with comfortable margins.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::AsbcVector;

/// Sideband deltas in dB against the healthy baseline, ordered
/// `(1-3/p, 1-1/p, 1+1/p, 1+3/p, 1+5/p, 1+7/p)·f_s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaVector {
    pub frequencies_hz: [f64; 6],
    pub deltas_db: [f64; 6],
}

impl DeltaVector {
    pub fn max_db(&self) -> f64 {
        self.deltas_db
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_db(&self) -> f64 {
        self.deltas_db.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Decision-tree thresholds in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Thresholds {
    /// Smallest delta that counts as a fault signature at all.
    pub detect_db: f64,
    /// Floor that the whole pattern must clear for partial demagnetization,
    /// and the bar for a "strong" second column.
    pub pd_floor_db: f64,
    /// Rise at the lowest column that separates mixed from dynamic
    /// eccentricity.
    pub mixed_f1_db: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            detect_db: 5.0,
            pd_floor_db: 20.0,
            mixed_f1_db: 5.0,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        if self.detect_db < 0.0 || self.pd_floor_db < 0.0 || self.mixed_f1_db < 0.0 {
            return Err(Error::InvalidInput("thresholds must be >= 0 dB".into()));
        }
        if self.pd_floor_db <= self.detect_db {
            return Err(Error::InvalidInput(
                "pd_floor_db must exceed detect_db".into(),
            ));
        }
        Ok(())
    }
}

/// Classified machine condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FaultLabel {
    Healthy,
    StaticEcc,
    DynamicEcc,
    MixedEcc,
    PartialDemag,
}

impl std::fmt::Display for FaultLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FaultLabel::Healthy => "Healthy",
            FaultLabel::StaticEcc => "StaticEcc",
            FaultLabel::DynamicEcc => "DynamicEcc",
            FaultLabel::MixedEcc => "MixedEcc",
            FaultLabel::PartialDemag => "PartialDemag",
        };
        f.write_str(s)
    }
}

/// Classification outcome with the evidence that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosisReport {
    pub label: FaultLabel,
    /// Largest sideband delta in dB.
    pub severity_db: f64,
    pub deltas: DeltaVector,
    /// Every comparison the tree made, in order.
    pub notes: Vec<String>,
    pub thresholds: Thresholds,
}

/// Element-wise dB difference of a fault row against the healthy row.
pub fn baseline_delta(fault: &AsbcVector, healthy: &AsbcVector) -> Result<DeltaVector> {
    if !fault.same_columns(healthy) {
        return Err(Error::InvalidInput(
            "fault and healthy ASBC vectors have different frequency columns".into(),
        ));
    }
    if fault.entries.len() != 6 {
        return Err(Error::InvalidInput(format!(
            "expected the six-column sideband pattern, got {} columns",
            fault.entries.len()
        )));
    }
    let mut frequencies = [0.0; 6];
    let mut deltas = [0.0; 6];
    for (i, (f, h)) in fault.entries.iter().zip(&healthy.entries).enumerate() {
        frequencies[i] = f.target_frequency_hz;
        deltas[i] = f.amplitude_db - h.amplitude_db;
    }
    Ok(DeltaVector {
        frequencies_hz: frequencies,
        deltas_db: deltas,
    })
}

/// Run the calibrated decision tree over a delta vector.
pub fn classify(deltas: &DeltaVector, thresholds: &Thresholds) -> DiagnosisReport {
    let mut notes = Vec::new();
    let max = deltas.max_db();
    let min = deltas.min_db();
    let f1 = deltas.deltas_db[0];
    let f2 = deltas.deltas_db[1];

    let label = if max < thresholds.detect_db {
        notes.push(format!(
            "rule 1: max delta {max:.2} dB < detect {:.2} dB -> Healthy",
            thresholds.detect_db
        ));
        FaultLabel::Healthy
    } else {
        notes.push(format!(
            "rule 1: max delta {max:.2} dB >= detect {:.2} dB -> fault present",
            thresholds.detect_db
        ));
        if min >= thresholds.pd_floor_db {
            notes.push(format!(
                "rule 2: min delta {min:.2} dB >= pd floor {:.2} dB -> uniform elevation \
                 across the pattern -> PartialDemag",
                thresholds.pd_floor_db
            ));
            FaultLabel::PartialDemag
        } else {
            notes.push(format!(
                "rule 2: min delta {min:.2} dB < pd floor {:.2} dB -> not uniformly elevated",
                thresholds.pd_floor_db
            ));
            if f2 >= thresholds.pd_floor_db {
                notes.push(format!(
                    "rule 3: delta at (1-1/p)fs {f2:.2} dB >= {:.2} dB -> strong low-order \
                     sidebands",
                    thresholds.pd_floor_db
                ));
                if f1 >= thresholds.mixed_f1_db {
                    notes.push(format!(
                        "rule 3a: delta at (1-3/p)fs {f1:.2} dB >= {:.2} dB -> MixedEcc",
                        thresholds.mixed_f1_db
                    ));
                    FaultLabel::MixedEcc
                } else {
                    notes.push(format!(
                        "rule 3b: delta at (1-3/p)fs {f1:.2} dB < {:.2} dB -> DynamicEcc",
                        thresholds.mixed_f1_db
                    ));
                    FaultLabel::DynamicEcc
                }
            } else {
                notes.push(format!(
                    "rule 4: delta at (1-1/p)fs {f2:.2} dB < {:.2} dB -> StaticEcc",
                    thresholds.pd_floor_db
                ));
                FaultLabel::StaticEcc
            }
        }
    };

    DiagnosisReport {
        label,
        severity_db: max,
        deltas: deltas.clone(),
        notes,
        thresholds: *thresholds,
    }
}

/// Order partial-demagnetization scenarios by mean sideband amplitude,
/// descending; ties break on the highest column (1+7/p)·f_s.
pub fn rank_pd_variants(entries: &[(String, AsbcVector)]) -> Result<Vec<(String, f64)>> {
    if entries.len() < 2 {
        return Err(Error::InvalidInput(
            "ranking needs at least two scenario vectors".into(),
        ));
    }
    for (label, v) in &entries[1..] {
        if !v.same_columns(&entries[0].1) {
            return Err(Error::InvalidInput(format!(
                "scenario '{label}' has mismatched frequency columns"
            )));
        }
    }
    let mut ranked: Vec<(String, f64, f64)> = entries
        .iter()
        .map(|(label, v)| {
            let amps = v.amplitudes_db();
            let mean = amps.iter().sum::<f64>() / amps.len() as f64;
            let last = *amps.last().unwrap_or(&f64::NEG_INFINITY);
            (label.clone(), mean, last)
        })
        .collect();
    ranked.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .unwrap()
            .then(b.2.partial_cmp(&a.2).unwrap())
    });
    Ok(ranked
        .into_iter()
        .map(|(label, mean, _)| (label, mean))
        .collect())
}
