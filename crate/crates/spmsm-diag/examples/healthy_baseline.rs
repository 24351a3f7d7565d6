//! Healthy-machine synthesis against the calibration targets: flux-linkage
//! fundamental, back-EMF fundamental, and mean torque.
//!
//! ```bash
//! cargo run --release --example healthy_baseline
//! ```

use spmsm_diag::fault::FaultSpec;
use spmsm_diag::motor::MotorSpec;
use spmsm_diag::synth::{
    calibrate, peak_to_peak_ripple, synthesize_waveforms, tone_component, SimConfig, EMF_TARGET_V,
    FLUX_TARGET_WB,
};

fn main() {
    let motor = MotorSpec::default();
    let cal = calibrate(&motor, FLUX_TARGET_WB, EMF_TARGET_V);
    println!("calibration:");
    println!("  pm field amplitude  {:.5} T", cal.pm_field_t);
    println!("  turns per phase     {}", cal.turns_per_phase);
    println!("  predicted EMF peak  {:.2} V", cal.predicted_emf_peak_v);

    let sim = SimConfig::default();
    let set = synthesize_waveforms(&motor, &FaultSpec::Healthy, &sim).unwrap();
    let (flux, _) = tone_component(&set.flux_linkage[0], motor.supply_frequency_hz);
    let (emf, _) = tone_component(&set.back_emf[0], motor.supply_frequency_hz);
    println!("\nsynthesized healthy machine:");
    println!(
        "  flux-linkage fundamental {:.6} Wb (target {FLUX_TARGET_WB})",
        flux
    );
    println!(
        "  back-EMF fundamental     {:.2} V (target {EMF_TARGET_V})",
        emf
    );
    println!("  mean torque              {:.2} N*m", set.torque.mean());
    println!(
        "  torque ripple            {:.2} %",
        peak_to_peak_ripple(&set.torque).unwrap()
    );
    println!(
        "  mechanical speed         {:.2} rad/s ({} samples at {:.1} kHz)",
        set.mech_speed_rad_s,
        set.torque.len(),
        set.torque.sample_rate_hz / 1e3
    );
}
