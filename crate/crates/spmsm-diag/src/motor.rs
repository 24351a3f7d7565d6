//! Motor and vehicle parameter sets plus the analytical sizing relations
//! that fix a consistent geometry and operating point for the simulator.
//!
//! Covers:
//! - vehicle load computation (propulsion force, shaft speed/torque/power),
//! - stator slot/tooth sectional geometry,
//! - rotor magnet-height and yoke-thickness sizing from the airgap flux
//!   density via the Ampere theorem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vehicle-side parameters used to derive the motor operating point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VehicleSpec {
    /// Vehicle mass in kg.
    pub mass_kg: f64,
    /// Gravitational acceleration in m/s².
    pub gravity_m_s2: f64,
    /// Rolling resistance coefficient (dimensionless).
    pub rolling_resistance_coeff: f64,
    /// Air density in kg/m³.
    pub air_density_kg_m3: f64,
    /// Aerodynamic drag coefficient (dimensionless).
    pub drag_coeff: f64,
    /// Frontal area in m².
    pub frontal_area_m2: f64,
    /// Wheel radius in m.
    pub wheel_radius_m: f64,
    /// Gearbox ratio from motor shaft to wheel (dimensionless).
    pub gear_ratio: f64,
}

impl Default for VehicleSpec {
    fn default() -> Self {
        Self {
            mass_kg: 1500.0,
            gravity_m_s2: 9.81,
            rolling_resistance_coeff: 0.01,
            air_density_kg_m3: 1.2,
            drag_coeff: 0.3,
            frontal_area_m2: 2.0,
            wheel_radius_m: 0.3,
            gear_ratio: 1.0,
        }
    }
}

impl VehicleSpec {
    /// Check the sign constraints: strictly positive physical dimensions,
    /// non-negative drag and rolling coefficients.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            (self.mass_kg, "mass_kg"),
            (self.gravity_m_s2, "gravity_m_s2"),
            (self.air_density_kg_m3, "air_density_kg_m3"),
            (self.frontal_area_m2, "frontal_area_m2"),
            (self.wheel_radius_m, "wheel_radius_m"),
            (self.gear_ratio, "gear_ratio"),
        ];
        for (v, name) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidSpec(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.rolling_resistance_coeff < 0.0 || self.drag_coeff < 0.0 {
            return Err(Error::InvalidSpec(
                "drag and rolling-resistance coefficients must be >= 0".into(),
            ));
        }
        Ok(())
    }
}

/// Shaft-side operating point derived from a vehicle load case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    /// Propulsion force at the wheels in N.
    pub propulsion_force_n: f64,
    /// Motor angular speed in rad/s.
    pub angular_speed_rad_s: f64,
    /// Motor torque in N·m.
    pub torque_nm: f64,
    /// Motor mechanical power in W.
    pub power_w: f64,
}

/// Geometric, electrical, and magnetic parameters of the machine.
///
/// Defaults describe the 62 kW 8-pole/12-slot surface-magnet machine the
/// toolkit simulates. All lengths are metres and all angles radians; config
/// files use millimetre keys and convert at the boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MotorSpec {
    pub stator_outer_diameter_m: f64,
    pub stator_inner_diameter_m: f64,
    pub rotor_outer_diameter_m: f64,
    /// Core stack length L_m.
    pub core_length_m: f64,
    /// Uniform mechanical airgap g.
    pub airgap_m: f64,
    /// Magnet radial height H_a.
    pub magnet_height_m: f64,
    pub magnet_count: u32,
    pub slot_count: u32,
    pub pole_pairs: u32,
    pub pole_count: u32,
    /// Peak phase current amplitude in A.
    pub terminal_current_peak_a: f64,
    /// Electrical supply frequency in Hz.
    pub supply_frequency_hz: f64,
    pub rated_speed_rpm: f64,
    /// Turns per phase N; the EMF calibration fixes the default.
    pub turns_per_phase: u32,
    /// Mean diameter across the airgap region D_m.
    pub average_diameter_m: f64,
    /// Tooth radial height H_d.
    pub tooth_height_m: f64,
    /// Principal tooth angular width.
    pub principal_tooth_angle_rad: f64,
    /// Inserted tooth angular width.
    pub inserted_tooth_angle_rad: f64,
    /// Slot angular width.
    pub slot_angle_rad: f64,
    /// Airgap flux density B_e used by the sizing relations.
    pub airgap_flux_density_t: f64,
    /// Stator yoke flux density B_cs (calibration knob).
    pub stator_yoke_flux_density_t: f64,
    /// Slot fill factor K_fu (calibration knob).
    pub fill_factor: f64,
    /// Magnet remanence at 20 °C.
    pub magnet_remanence_20c_t: f64,
    /// Remanence temperature coefficient in 1/°C (negative for NdFeB).
    pub magnet_temp_coeff_per_c: f64,
    /// Magnet recoil relative permeability.
    pub magnet_rel_permeability: f64,
    /// Magnet arc span per pole in mechanical radians.
    pub magnet_arc_angle_rad: f64,
    /// Flux leakage coefficient kappa in the magnet sizing relation.
    pub leakage_coeff: f64,
}

impl Default for MotorSpec {
    fn default() -> Self {
        let pole_pitch = 2.0 * std::f64::consts::PI / 8.0;
        let remanence = 1.16;
        let magnet_height = 0.00776;
        let mu_a = 1.044;
        let airgap = 0.002;
        let leakage = 1.0;
        // B_e consistent with the magnet-height relation, so sizing the rotor
        // at 20 °C returns the catalog magnet height exactly.
        let airgap_flux_density =
            remanence * magnet_height * leakage / (magnet_height + leakage * mu_a * airgap);
        Self {
            stator_outer_diameter_m: 0.174,
            stator_inner_diameter_m: 0.102,
            rotor_outer_diameter_m: 0.082,
            core_length_m: 0.250,
            airgap_m: airgap,
            magnet_height_m: magnet_height,
            magnet_count: 8,
            slot_count: 12,
            pole_pairs: 4,
            pole_count: 8,
            terminal_current_peak_a: 59.5,
            supply_frequency_hz: 188.3,
            rated_speed_rpm: 2824.0,
            turns_per_phase: 100,
            average_diameter_m: (0.102 + 0.082) / 2.0,
            tooth_height_m: 0.020,
            principal_tooth_angle_rad: 0.35,
            inserted_tooth_angle_rad: 0.17,
            slot_angle_rad: (2.0 * std::f64::consts::PI / 6.0 - 0.35 - 0.17) / 2.0,
            airgap_flux_density_t: airgap_flux_density,
            stator_yoke_flux_density_t: 1.5,
            fill_factor: 0.95,
            magnet_remanence_20c_t: remanence,
            magnet_temp_coeff_per_c: -0.0012,
            magnet_rel_permeability: mu_a,
            magnet_arc_angle_rad: 0.8 * pole_pitch,
            leakage_coeff: leakage,
        }
    }
}

impl MotorSpec {
    /// Stator bore radius in m.
    pub fn bore_radius_m(&self) -> f64 {
        self.stator_inner_diameter_m / 2.0
    }

    /// Mechanical rotation frequency implied by the electrical supply, Hz.
    ///
    /// The simulator derives its time base from this so that the supply
    /// frequency and every sideband land exactly on spectral bins.
    pub fn mechanical_frequency_hz(&self) -> f64 {
        self.supply_frequency_hz / self.pole_pairs as f64
    }

    /// Mechanical angular speed in rad/s (constant per run).
    pub fn mechanical_speed_rad_s(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.mechanical_frequency_hz()
    }

    /// Number of principal teeth N_d (one per two slots).
    pub fn principal_tooth_count(&self) -> u32 {
        self.slot_count / 2
    }

    /// Check every structural invariant of the parameter set.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            (self.stator_outer_diameter_m, "stator_outer_diameter_m"),
            (self.stator_inner_diameter_m, "stator_inner_diameter_m"),
            (self.rotor_outer_diameter_m, "rotor_outer_diameter_m"),
            (self.core_length_m, "core_length_m"),
            (self.airgap_m, "airgap_m"),
            (self.magnet_height_m, "magnet_height_m"),
            (self.terminal_current_peak_a, "terminal_current_peak_a"),
            (self.supply_frequency_hz, "supply_frequency_hz"),
            (self.rated_speed_rpm, "rated_speed_rpm"),
            (self.average_diameter_m, "average_diameter_m"),
            (self.tooth_height_m, "tooth_height_m"),
            (self.airgap_flux_density_t, "airgap_flux_density_t"),
            (
                self.stator_yoke_flux_density_t,
                "stator_yoke_flux_density_t",
            ),
            (self.fill_factor, "fill_factor"),
            (self.magnet_remanence_20c_t, "magnet_remanence_20c_t"),
            (self.magnet_rel_permeability, "magnet_rel_permeability"),
            (self.magnet_arc_angle_rad, "magnet_arc_angle_rad"),
            (self.leakage_coeff, "leakage_coeff"),
        ];
        for (v, name) in positive {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidSpec(format!("{name} must be > 0, got {v}")));
            }
        }
        if self.pole_pairs == 0 || self.turns_per_phase == 0 {
            return Err(Error::InvalidSpec(
                "pole_pairs and turns_per_phase must be >= 1".into(),
            ));
        }
        if self.pole_count != 2 * self.pole_pairs {
            return Err(Error::InvalidSpec(format!(
                "pole_count {} must equal 2 * pole_pairs {}",
                self.pole_count, self.pole_pairs
            )));
        }
        if self.slot_count == 0 || !self.slot_count.is_multiple_of(2) {
            return Err(Error::InvalidSpec(format!(
                "slot_count {} must be a positive even number",
                self.slot_count
            )));
        }
        if self.stator_inner_diameter_m <= self.rotor_outer_diameter_m {
            return Err(Error::InvalidSpec(
                "stator inner diameter must exceed rotor outer diameter".into(),
            ));
        }
        let radial_clearance = (self.stator_inner_diameter_m - self.rotor_outer_diameter_m) / 2.0;
        let gap_plus_magnet = self.airgap_m + self.magnet_height_m;
        if (radial_clearance - gap_plus_magnet).abs() > 0.05 * gap_plus_magnet {
            return Err(Error::InvalidSpec(format!(
                "radial clearance {radial_clearance:.4} m disagrees with airgap + magnet height \
                 {gap_plus_magnet:.4} m by more than 5%"
            )));
        }
        let mech_electrical = self.rated_speed_rpm / 60.0 * self.pole_pairs as f64;
        if (mech_electrical - self.supply_frequency_hz).abs() > 0.005 * self.supply_frequency_hz {
            return Err(Error::InvalidSpec(format!(
                "rated speed implies {mech_electrical:.2} Hz electrical, supply frequency is \
                 {} Hz (limit 0.5%)",
                self.supply_frequency_hz
            )));
        }
        let pole_pitch = 2.0 * std::f64::consts::PI / self.pole_count as f64;
        if self.magnet_arc_angle_rad > pole_pitch {
            return Err(Error::InvalidSpec(format!(
                "magnet arc {:.4} rad exceeds the pole pitch {pole_pitch:.4} rad",
                self.magnet_arc_angle_rad
            )));
        }
        if self.principal_tooth_angle_rad < 0.0
            || self.inserted_tooth_angle_rad < 0.0
            || self.slot_angle_rad < 0.0
        {
            return Err(Error::InvalidSpec("tooth/slot angles must be >= 0".into()));
        }
        Ok(())
    }
}

/// Sectional stator geometry derived from a motor spec.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatorGeometry {
    /// Slot average width L_enc in m.
    pub slot_width_m: f64,
    /// Principal tooth section S_d in m².
    pub principal_tooth_section_m2: f64,
    /// Inserted tooth section S_di in m².
    pub inserted_tooth_section_m2: f64,
    /// Slot section S_e in m².
    pub slot_section_m2: f64,
}

/// Rotor magnet and yoke geometry sized for a target airgap flux density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotorGeometry {
    /// Magnet radial height H_a in m.
    pub magnet_height_m: f64,
    /// Magnet remanence at the working temperature in T.
    pub remanence_at_temp_t: f64,
    /// Rotor yoke thickness H_cr in m.
    pub yoke_thickness_m: f64,
}

/// Translate a vehicle load case into the motor shaft operating point.
///
/// The propulsion force combines rolling resistance, aerodynamic drag, the
/// acceleration term, and the grade climb term; shaft speed and torque follow
/// from the wheel radius and gear ratio, and power is their product.
pub fn vehicle_operating_point(
    vehicle: &VehicleSpec,
    speed_m_s: f64,
    accel_m_s2: f64,
    grade_rad: f64,
) -> Result<OperatingPoint> {
    vehicle.validate()?;
    if speed_m_s < 0.0 {
        return Err(Error::InvalidInput(format!(
            "speed must be >= 0, got {speed_m_s}"
        )));
    }
    let rolling = vehicle.mass_kg * vehicle.gravity_m_s2 * vehicle.rolling_resistance_coeff;
    let drag = 0.5
        * vehicle.air_density_kg_m3
        * vehicle.drag_coeff
        * vehicle.frontal_area_m2
        * speed_m_s
        * speed_m_s;
    let inertial = vehicle.mass_kg * accel_m_s2;
    let climb = vehicle.mass_kg * vehicle.gravity_m_s2 * grade_rad.sin();
    let force = rolling + drag + inertial + climb;

    let angular_speed = speed_m_s / vehicle.wheel_radius_m * vehicle.gear_ratio;
    let torque = force * vehicle.wheel_radius_m / vehicle.gear_ratio;
    Ok(OperatingPoint {
        propulsion_force_n: force,
        angular_speed_rad_s: angular_speed,
        torque_nm: torque,
        power_w: torque * angular_speed,
    })
}

/// Compute slot width and tooth/slot sections from the angular widths.
pub fn size_stator_geometry(motor: &MotorSpec) -> Result<StatorGeometry> {
    let n_d = motor.principal_tooth_count();
    if n_d == 0 {
        return Err(Error::InvalidSpec("slot_count must be >= 2".into()));
    }
    let pitch = 2.0 * std::f64::consts::PI / n_d as f64;
    if motor.principal_tooth_angle_rad < 0.0
        || motor.inserted_tooth_angle_rad < 0.0
        || motor.slot_angle_rad < 0.0
    {
        return Err(Error::InvalidSpec("tooth/slot angles must be >= 0".into()));
    }
    if motor.principal_tooth_angle_rad + motor.inserted_tooth_angle_rad >= pitch {
        return Err(Error::InvalidSpec(format!(
            "tooth angles sum {:.4} rad exceeds the slot pitch {pitch:.4} rad",
            motor.principal_tooth_angle_rad + motor.inserted_tooth_angle_rad
        )));
    }
    let d_m = motor.average_diameter_m;
    let e = motor.airgap_m;
    let l_m = motor.core_length_m;
    Ok(StatorGeometry {
        slot_width_m: (d_m + e + motor.tooth_height_m) / 2.0 * motor.slot_angle_rad,
        principal_tooth_section_m2: (d_m + e) / 2.0 * motor.principal_tooth_angle_rad * l_m,
        inserted_tooth_section_m2: (d_m + e) / 2.0 * motor.inserted_tooth_angle_rad * l_m,
        slot_section_m2: motor.slot_angle_rad * (d_m + e) / 2.0 * l_m,
    })
}

/// Slot section computed from the slot pitch instead of the slot angle.
///
/// Equals [`StatorGeometry::slot_section_m2`] whenever the angular widths
/// close the slot pitch: A_dent + A_denti + 2·A_enc = 2π/N_d.
pub fn slot_section_from_pitch(motor: &MotorSpec) -> f64 {
    let n_d = motor.principal_tooth_count().max(1);
    let pitch = 2.0 * std::f64::consts::PI / n_d as f64;
    0.5 * (pitch - motor.principal_tooth_angle_rad - motor.inserted_tooth_angle_rad)
        * (motor.average_diameter_m + motor.airgap_m)
        / 2.0
        * motor.core_length_m
}

/// Magnet remanence at a working temperature from the 20 °C value.
pub fn remanence_at_temp(motor: &MotorSpec, magnet_temp_c: f64) -> f64 {
    motor.magnet_remanence_20c_t * (1.0 + motor.magnet_temp_coeff_per_c * (magnet_temp_c - 20.0))
}

/// Size the magnet height and rotor yoke for the target airgap flux density.
///
/// Magnet height comes from the Ampere theorem around the magnet/airgap loop;
/// the yoke thickness carries half of one principal-tooth flux at the given
/// yoke flux density and fill factor.
pub fn size_rotor_geometry(motor: &MotorSpec, magnet_temp_c: f64) -> Result<RotorGeometry> {
    let remanence = remanence_at_temp(motor, magnet_temp_c);
    let denom = remanence - motor.airgap_flux_density_t / motor.leakage_coeff;
    if denom <= 0.0 {
        return Err(Error::DemagnetizationRisk(format!(
            "remanence {remanence:.4} T cannot sustain airgap flux density {} T with leakage \
             coefficient {}",
            motor.airgap_flux_density_t, motor.leakage_coeff
        )));
    }
    let magnet_height =
        motor.magnet_rel_permeability * motor.airgap_flux_density_t * motor.airgap_m / denom;
    let stator = size_stator_geometry(motor)?;
    let yoke_thickness = motor.airgap_flux_density_t * stator.principal_tooth_section_m2
        / (2.0 * motor.stator_yoke_flux_density_t * motor.core_length_m * motor.fill_factor);
    Ok(RotorGeometry {
        magnet_height_m: magnet_height,
        remanence_at_temp_t: remanence,
        yoke_thickness_m: yoke_thickness,
    })
}
