//! Fault descriptions and the analytical fault physics behind them:
//!
//! - airgap width under static, dynamic, and mixed eccentricity,
//! - the rectangular permanent-magnet flux-density pattern and its edits
//!   under uniform and partial demagnetization,
//! - the characteristic frequency patterns that faults excite in the
//!   back-EMF spectrum.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::motor::MotorSpec;

use std::f64::consts::{PI, TAU};

/// Description of the injected machine condition.
///
/// Eccentricity ratios are fractions of the uniform airgap in `[0, 1)`.
/// Demagnetization severity follows the flux-magnitude index convention:
/// 0 is total demagnetization, 1 is a healthy magnet. Arc fraction is the
/// kept fraction of the magnet arc in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FaultSpec {
    Healthy,
    /// Rotor rotation axis displaced from the stator centre but fixed in
    /// space; the gap narrows on one side permanently.
    #[serde(alias = "se")]
    StaticEcc {
        delta_s: f64,
    },
    /// Rotor centre displaced from its rotation axis; the narrow-gap
    /// direction turns with the rotor.
    #[serde(alias = "de")]
    DynamicEcc {
        delta_d: f64,
    },
    /// Simultaneous static and dynamic offsets.
    #[serde(alias = "me")]
    MixedEcc {
        delta_s: f64,
        delta_d: f64,
    },
    /// All poles weakened by the same factor.
    #[serde(alias = "ud")]
    UniformDemag {
        severity: f64,
    },
    /// One pole weakened uniformly across its arc.
    PdUniformPole {
        severity: f64,
        pole_index: u32,
    },
    /// One pole weakened by a linear gradient: healthy at the leading edge,
    /// `severity` at the trailing edge.
    PdGradedPole {
        severity: f64,
        pole_index: u32,
    },
    /// One pole's arc shortened from the trailing edge; the removed span
    /// contributes no field. `arc_fraction` is the kept fraction.
    PdShortenedArc {
        arc_fraction: f64,
        pole_index: u32,
    },
}

impl FaultSpec {
    /// Range-check severities and the pole index against the machine.
    pub fn validate(&self, pole_count: u32) -> Result<()> {
        let ratio_ok = |d: f64| (0.0..1.0).contains(&d);
        match *self {
            FaultSpec::Healthy => Ok(()),
            FaultSpec::StaticEcc { delta_s } => {
                if ratio_ok(delta_s) {
                    Ok(())
                } else {
                    Err(Error::InvalidFault(format!(
                        "delta_s {delta_s} outside [0, 1)"
                    )))
                }
            }
            FaultSpec::DynamicEcc { delta_d } => {
                if ratio_ok(delta_d) {
                    Ok(())
                } else {
                    Err(Error::InvalidFault(format!(
                        "delta_d {delta_d} outside [0, 1)"
                    )))
                }
            }
            FaultSpec::MixedEcc { delta_s, delta_d } => {
                if !ratio_ok(delta_s) || !ratio_ok(delta_d) {
                    return Err(Error::InvalidFault(format!(
                        "delta_s {delta_s} / delta_d {delta_d} outside [0, 1)"
                    )));
                }
                // Worst case puts both offsets on the same side.
                if delta_s + delta_d >= 1.0 {
                    return Err(Error::InvalidFault(format!(
                        "combined offsets delta_s + delta_d = {} close the gap",
                        delta_s + delta_d
                    )));
                }
                Ok(())
            }
            FaultSpec::UniformDemag { severity }
            | FaultSpec::PdUniformPole { severity, .. }
            | FaultSpec::PdGradedPole { severity, .. } => {
                if !(0.0..=1.0).contains(&severity) {
                    return Err(Error::InvalidFault(format!(
                        "severity {severity} outside [0, 1]"
                    )));
                }
                self.check_pole_index(pole_count)
            }
            FaultSpec::PdShortenedArc { arc_fraction, .. } => {
                if !(arc_fraction > 0.0 && arc_fraction <= 1.0) {
                    return Err(Error::InvalidFault(format!(
                        "arc_fraction {arc_fraction} outside (0, 1]"
                    )));
                }
                self.check_pole_index(pole_count)
            }
        }
    }

    fn check_pole_index(&self, pole_count: u32) -> Result<()> {
        let idx = match *self {
            FaultSpec::PdUniformPole { pole_index, .. }
            | FaultSpec::PdGradedPole { pole_index, .. }
            | FaultSpec::PdShortenedArc { pole_index, .. } => pole_index,
            _ => return Ok(()),
        };
        if idx >= pole_count {
            return Err(Error::InvalidFault(format!(
                "pole_index {idx} out of range for {pole_count} poles"
            )));
        }
        Ok(())
    }

    /// True for the partial-demagnetization variants.
    pub fn is_partial_demag(&self) -> bool {
        matches!(
            self,
            FaultSpec::PdUniformPole { .. }
                | FaultSpec::PdGradedPole { .. }
                | FaultSpec::PdShortenedArc { .. }
        )
    }

    /// True for the eccentricity variants.
    pub fn is_eccentricity(&self) -> bool {
        matches!(
            self,
            FaultSpec::StaticEcc { .. } | FaultSpec::DynamicEcc { .. } | FaultSpec::MixedEcc { .. }
        )
    }
}

/// Combined eccentricity ratio of a static and a dynamic offset separated
/// by the angle `theta`.
pub fn mixed_ecc_ratio(delta_s: f64, delta_d: f64, theta: f64) -> f64 {
    (delta_s * delta_s + delta_d * delta_d + 2.0 * delta_s * delta_d * theta.cos()).sqrt()
}

/// Direction of the combined offset vector when the dynamic component points
/// along `theta` and the static one along zero.
pub fn mixed_ecc_transfer_angle(delta_s: f64, delta_d: f64, theta: f64) -> f64 {
    (delta_d * theta.sin()).atan2(delta_s + delta_d * theta.cos())
}

/// Airgap width at stator angle `theta` and time `t` under the given fault.
///
/// Healthy and demagnetization conditions leave the gap uniform. Static
/// eccentricity modulates it over angle, dynamic eccentricity rotates the
/// modulation with the rotor, and mixed eccentricity uses the exact
/// circle-offset geometry with the time-varying combined offset.
pub fn airgap_width(fault: &FaultSpec, theta: f64, t: f64, motor: &MotorSpec) -> Result<f64> {
    let g = motor.airgap_m;
    if !g.is_finite() || g <= 0.0 {
        return Err(Error::InvalidSpec(format!("airgap must be > 0, got {g}")));
    }
    let omega_mech = motor.mechanical_speed_rad_s();
    let gap = match *fault {
        FaultSpec::Healthy
        | FaultSpec::UniformDemag { .. }
        | FaultSpec::PdUniformPole { .. }
        | FaultSpec::PdGradedPole { .. }
        | FaultSpec::PdShortenedArc { .. } => g,
        FaultSpec::StaticEcc { delta_s } => g * (1.0 - delta_s * theta.cos()),
        FaultSpec::DynamicEcc { delta_d } => g * (1.0 - delta_d * (omega_mech * t - theta).cos()),
        FaultSpec::MixedEcc { delta_s, delta_d } => {
            let rotor_angle = omega_mech * t;
            let delta_m = mixed_ecc_ratio(delta_s, delta_d, rotor_angle);
            let phi_m = mixed_ecc_transfer_angle(delta_s, delta_d, rotor_angle);
            let r_s = motor.bore_radius_m();
            // Rotor surface radius taken as bore minus the nominal gap so the
            // healthy limit recovers the uniform gap exactly.
            let r_r = r_s - g;
            let d = delta_m * g;
            let s = (theta - phi_m).sin();
            let under = r_r * r_r - d * d * s * s;
            if under <= 0.0 {
                return Err(Error::RotorContact {
                    gap_m: 0.0,
                    theta_rad: theta,
                    time_s: t,
                });
            }
            r_s - d * (theta - phi_m).cos() - under.sqrt()
        }
    };
    if gap <= 0.0 {
        return Err(Error::RotorContact {
            gap_m: gap,
            theta_rad: theta,
            time_s: t,
        });
    }
    Ok(gap)
}

// ─── Permanent-magnet field pattern ─────────────────────────────────────────

/// One magnet arc on the rotor surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleArc {
    /// Arc start angle in mechanical rad, within `[0, 2π)`.
    pub start_rad: f64,
    /// Arc end angle, always greater than `start_rad`.
    pub end_rad: f64,
    /// Magnetization sign, alternating around the rotor.
    pub sign: f64,
    /// Magnetization scale at the arc start (1 = healthy).
    pub scale_start: f64,
    /// Magnetization scale at the arc end; differs from `scale_start` only
    /// for the graded-pole fault.
    pub scale_end: f64,
}

/// Rectangular-wave PM flux-density pattern over one mechanical revolution.
///
/// Pole `k` occupies the pitch cell `[kπ/p, (k+1)π/p)` with its arc centred
/// in the cell and sign `(-1)^k`; the Fourier series of the healthy pattern
/// over the electrical angle is the usual odd-harmonic magnet series.
#[derive(Debug, Clone, PartialEq)]
pub struct PMFieldModel {
    pub pole_pairs: u32,
    /// Flux-density amplitude of a healthy pole in T.
    pub base_field_t: f64,
    /// Magnet arc per pole for the healthy machine, mechanical rad.
    pub arc_rad: f64,
    pub poles: Vec<PoleArc>,
}

impl PMFieldModel {
    /// Healthy symmetric pattern.
    pub fn healthy(pole_pairs: u32, arc_rad: f64, base_field_t: f64) -> Result<Self> {
        if pole_pairs == 0 {
            return Err(Error::InvalidSpec("pole_pairs must be >= 1".into()));
        }
        let pitch = PI / pole_pairs as f64;
        if !(arc_rad > 0.0 && arc_rad <= pitch) {
            return Err(Error::InvalidSpec(format!(
                "magnet arc {arc_rad} rad outside (0, {pitch}]"
            )));
        }
        let pole_count = 2 * pole_pairs;
        let poles = (0..pole_count)
            .map(|k| {
                let centre = (k as f64 + 0.5) * pitch;
                PoleArc {
                    start_rad: centre - arc_rad / 2.0,
                    end_rad: centre + arc_rad / 2.0,
                    sign: if k % 2 == 0 { 1.0 } else { -1.0 },
                    scale_start: 1.0,
                    scale_end: 1.0,
                }
            })
            .collect();
        Ok(Self {
            pole_pairs,
            base_field_t,
            arc_rad,
            poles,
        })
    }

    /// Healthy pattern for a motor spec with the given field amplitude.
    pub fn for_motor(motor: &MotorSpec, base_field_t: f64) -> Result<Self> {
        Self::healthy(motor.pole_pairs, motor.magnet_arc_angle_rad, base_field_t)
    }

    /// Apply the demagnetization part of a fault to this pattern.
    ///
    /// Eccentricity faults leave the pattern untouched; they act on the gap.
    pub fn with_fault(&self, fault: &FaultSpec) -> Result<Self> {
        fault.validate(self.poles.len() as u32)?;
        let mut out = self.clone();
        match *fault {
            FaultSpec::Healthy
            | FaultSpec::StaticEcc { .. }
            | FaultSpec::DynamicEcc { .. }
            | FaultSpec::MixedEcc { .. } => {}
            FaultSpec::UniformDemag { severity } => {
                for pole in &mut out.poles {
                    pole.scale_start = severity;
                    pole.scale_end = severity;
                }
            }
            FaultSpec::PdUniformPole {
                severity,
                pole_index,
            } => {
                let pole = &mut out.poles[pole_index as usize];
                pole.scale_start = severity;
                pole.scale_end = severity;
            }
            FaultSpec::PdGradedPole {
                severity,
                pole_index,
            } => {
                let pole = &mut out.poles[pole_index as usize];
                pole.scale_start = 1.0;
                pole.scale_end = severity;
            }
            FaultSpec::PdShortenedArc {
                arc_fraction,
                pole_index,
            } => {
                let pole = &mut out.poles[pole_index as usize];
                pole.end_rad = pole.start_rad + arc_fraction * (pole.end_rad - pole.start_rad);
            }
        }
        Ok(out)
    }

    /// True when every pole has the same centred arc and one flat scale.
    pub fn is_symmetric(&self) -> bool {
        let pitch = PI / self.pole_pairs as f64;
        let first = &self.poles[0];
        let arc = first.end_rad - first.start_rad;
        let scale = first.scale_start;
        self.poles.iter().enumerate().all(|(k, p)| {
            let centre = (k as f64 + 0.5) * pitch;
            (p.end_rad - p.start_rad - arc).abs() < 1e-12
                && (0.5 * (p.start_rad + p.end_rad) - centre).abs() < 1e-12
                && p.scale_start == scale
                && p.scale_end == scale
        })
    }

    /// Sample the pattern at rotor angle `theta_r` (any real value; wrapped).
    pub fn sample(&self, theta_r: f64) -> f64 {
        let theta = theta_r.rem_euclid(TAU);
        let pitch = PI / self.pole_pairs as f64;
        let cell = (theta / pitch) as usize % self.poles.len();
        let pole = &self.poles[cell];
        if theta < pole.start_rad || theta >= pole.end_rad {
            return 0.0;
        }
        let span = pole.end_rad - pole.start_rad;
        let frac = if span > 0.0 {
            (theta - pole.start_rad) / span
        } else {
            0.0
        };
        let scale = pole.scale_start + (pole.scale_end - pole.scale_start) * frac;
        pole.sign * scale * self.base_field_t
    }
}

/// PM flux density at rotor angle `theta_r` with the fault applied.
///
/// Healthy gives the rectangular pole pattern; uniform demagnetization
/// scales it pointwise; the partial variants edit a single pole.
pub fn pm_flux_density(fault: &FaultSpec, model: &PMFieldModel, theta_r: f64) -> Result<f64> {
    Ok(model.with_fault(fault)?.sample(theta_r))
}

/// Closed-form Fourier sine coefficient of the symmetric pole pattern at
/// electrical harmonic `n`. Even harmonics are exactly zero.
pub fn pm_fourier_coefficient(n: u32, model: &PMFieldModel) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidInput("harmonic order must be >= 1".into()));
    }
    if !model.is_symmetric() {
        return Err(Error::InvalidInput(
            "closed-form coefficients require a symmetric pole pattern".into(),
        ));
    }
    if n.is_multiple_of(2) {
        return Ok(0.0);
    }
    let nf = n as f64;
    let arc = model.poles[0].end_rad - model.poles[0].start_rad;
    let scale = model.poles[0].scale_start;
    let amplitude = scale * model.base_field_t;
    // sin(nπ/2) = ±1 for odd n; avoid the rounding of sin at large arguments.
    let sign = if n % 4 == 1 { 1.0 } else { -1.0 };
    Ok(4.0 * amplitude / (PI * nf) * sign * (nf * model.pole_pairs as f64 * arc / 2.0).sin())
}

// ─── Characteristic frequency patterns ──────────────────────────────────────

/// Which family of spectral lines a pattern describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    /// Fractional sidebands raised by rotor eccentricity.
    Eccentricity,
    /// Odd supply harmonics present in a healthy or uniformly
    /// demagnetized machine.
    HealthySupport,
    /// Fractional sidebands raised by partial demagnetization; the same
    /// frequency set as the eccentricity pattern.
    PartialDemag,
}

/// Ordered list of characteristic frequencies for one fault family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyPattern {
    pub kind: PatternKind,
    /// Strictly positive frequencies, sorted ascending, in Hz.
    pub frequencies_hz: Vec<f64>,
    pub k_max: u32,
}

/// Build the characteristic frequency pattern for the given family.
///
/// Eccentricity and partial demagnetization produce `f_s(1 ± (2k-1)/p)`;
/// the healthy support is the odd harmonics `(2k-1)·f_s`. Non-positive
/// frequencies are discarded.
pub fn fault_frequency_pattern(
    kind: PatternKind,
    supply_frequency_hz: f64,
    pole_pairs: u32,
    k_max: u32,
) -> Result<FrequencyPattern> {
    if !supply_frequency_hz.is_finite() || supply_frequency_hz <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "supply frequency must be > 0, got {supply_frequency_hz}"
        )));
    }
    if pole_pairs == 0 || k_max == 0 {
        return Err(Error::InvalidInput(
            "pole_pairs and k_max must be >= 1".into(),
        ));
    }
    let mut frequencies = Vec::new();
    match kind {
        PatternKind::HealthySupport => {
            for k in 1..=k_max {
                frequencies.push((2 * k - 1) as f64 * supply_frequency_hz);
            }
        }
        PatternKind::Eccentricity | PatternKind::PartialDemag => {
            let p = pole_pairs as f64;
            for k in 1..=k_max {
                let m = (2 * k - 1) as f64;
                for f in [
                    supply_frequency_hz * (1.0 - m / p),
                    supply_frequency_hz * (1.0 + m / p),
                ] {
                    if f > 0.0 {
                        frequencies.push(f);
                    }
                }
            }
        }
    }
    frequencies.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(FrequencyPattern {
        kind,
        frequencies_hz: frequencies,
        k_max,
    })
}

/// The six sideband columns used throughout the reports:
/// `(1 - 3/p, 1 - 1/p, 1 + 1/p, 1 + 3/p, 1 + 5/p, 1 + 7/p) · f_s`.
pub fn sideband_columns(supply_frequency_hz: f64, pole_pairs: u32) -> [f64; 6] {
    let p = pole_pairs as f64;
    [-3.0, -1.0, 1.0, 3.0, 5.0, 7.0].map(|m| supply_frequency_hz * (1.0 + m / p))
}
