//! Vehicle operating point and machine sizing from the analytical relations.
//!
//! ```bash
//! cargo run --example motor_sizing
//! ```

use spmsm_diag::motor::{
    size_rotor_geometry, size_stator_geometry, vehicle_operating_point, MotorSpec, VehicleSpec,
};

fn main() {
    let vehicle = VehicleSpec::default();
    println!("vehicle load cases (mass {} kg):", vehicle.mass_kg);
    for (label, speed, accel, grade) in [
        ("cruise 90 km/h", 25.0, 0.0, 0.0),
        ("accelerating", 15.0, 2.0, 0.0),
        ("hill climb 5%", 20.0, 0.0, 0.05_f64.atan()),
    ] {
        let op = vehicle_operating_point(&vehicle, speed, accel, grade).unwrap();
        println!(
            "  {label:<16} force {:>8.1} N  shaft {:>7.2} rad/s  torque {:>7.1} N*m  power {:>8.2} kW",
            op.propulsion_force_n,
            op.angular_speed_rad_s,
            op.torque_nm,
            op.power_w / 1e3
        );
    }

    let motor = MotorSpec::default();
    println!("\nstator geometry:");
    let stator = size_stator_geometry(&motor).unwrap();
    println!(
        "  slot width             {:.3} mm",
        stator.slot_width_m * 1e3
    );
    println!(
        "  principal tooth section {:.2} cm^2",
        stator.principal_tooth_section_m2 * 1e4
    );
    println!(
        "  inserted tooth section  {:.2} cm^2",
        stator.inserted_tooth_section_m2 * 1e4
    );
    println!(
        "  slot section            {:.2} cm^2",
        stator.slot_section_m2 * 1e4
    );

    println!(
        "\nrotor sizing for {:.4} T airgap flux:",
        motor.airgap_flux_density_t
    );
    for temp in [20.0, 60.0, 100.0] {
        let rotor = size_rotor_geometry(&motor, temp).unwrap();
        println!(
            "  at {temp:>5.1} C: remanence {:.4} T -> magnet height {:.3} mm, yoke {:.2} mm",
            rotor.remanence_at_temp_t,
            rotor.magnet_height_m * 1e3,
            rotor.yoke_thickness_m * 1e3
        );
    }
}
