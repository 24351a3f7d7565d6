//! Thin command-line front end over the library: batch runs, calibration,
//! frequency patterns, and harmonic-table classification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use spmsm_diag::config::load_scenario;
use spmsm_diag::diagnosis::{baseline_delta, classify, Thresholds};
use spmsm_diag::fault::{fault_frequency_pattern, PatternKind};
use spmsm_diag::motor::MotorSpec;
use spmsm_diag::runner::run;
use spmsm_diag::spectral::HarmonicTable;
use spmsm_diag::synth::{calibrate, EMF_TARGET_V, FLUX_TARGET_WB};

#[derive(Parser)]
#[command(
    name = "spmsm-diag",
    version,
    about = "SPMSM fault-signature simulation and diagnosis"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every scenario in a config file and write the outputs.
    Run {
        /// Path to the JSON scenario config.
        config: PathBuf,
        /// Override the worker count from the config.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Print the PM field amplitude and turn count that hit the healthy
    /// flux and EMF targets.
    Calibrate {
        #[arg(long, default_value_t = FLUX_TARGET_WB)]
        flux_target: f64,
        #[arg(long, default_value_t = EMF_TARGET_V)]
        emf_target: f64,
    },
    /// Print a characteristic frequency pattern.
    Frequencies {
        /// Supply frequency in Hz.
        #[arg(long)]
        fs: f64,
        /// Pole pairs.
        #[arg(long)]
        p: u32,
        /// Highest harmonic index k.
        #[arg(long)]
        kmax: u32,
        /// Pattern family: eccentricity | healthy | pd.
        #[arg(long, default_value = "eccentricity")]
        kind: String,
    },
    /// Classify the rows of a harmonic-table CSV against its healthy row.
    Classify {
        /// Path to the harmonic table (scenario column + frequency columns).
        #[arg(long)]
        table: PathBuf,
        /// Label of the baseline row.
        #[arg(long, default_value = "healthy")]
        baseline: String,
        /// Detection threshold in dB.
        #[arg(long, default_value_t = Thresholds::default().detect_db)]
        detect_db: f64,
        /// Partial-demagnetization floor in dB.
        #[arg(long, default_value_t = Thresholds::default().pd_floor_db)]
        pd_floor_db: f64,
        /// Mixed-eccentricity low-column threshold in dB.
        #[arg(long, default_value_t = Thresholds::default().mixed_f1_db)]
        mixed_f1_db: f64,
    },
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run { config, workers } => cmd_run(&config, workers),
        Command::Calibrate {
            flux_target,
            emf_target,
        } => cmd_calibrate(flux_target, emf_target),
        Command::Frequencies { fs, p, kmax, kind } => cmd_frequencies(fs, p, kmax, &kind),
        Command::Classify {
            table,
            baseline,
            detect_db,
            pd_floor_db,
            mixed_f1_db,
        } => cmd_classify(
            &table,
            &baseline,
            Thresholds {
                detect_db,
                pd_floor_db,
                mixed_f1_db,
            },
        ),
    }
}

fn cmd_run(path: &std::path::Path, workers: Option<usize>) -> ExitCode {
    let mut config = match load_scenario(path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(w) = workers {
        config.workers = w;
    }
    match run(&config) {
        Ok(manifest) => {
            for outcome in &manifest.outcomes {
                let status = if outcome.ok { "ok" } else { "FAILED" };
                println!(
                    "{:<24} {status:<7} {:>8.1} ms  {} file(s)",
                    outcome.name,
                    outcome.wall_ms,
                    outcome.files.len()
                );
                if let Some(err) = &outcome.error {
                    println!("    {err}");
                }
            }
            for note in &manifest.notes {
                println!("note: {note}");
            }
            println!(
                "outputs in {} ({} shared file(s))",
                manifest.config.output_dir.display(),
                manifest.shared_files.len()
            );
            if manifest.failed > 0 {
                eprintln!("{} scenario(s) failed", manifest.failed);
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_calibrate(flux_target: f64, emf_target: f64) -> ExitCode {
    let motor = MotorSpec::default();
    let cal = calibrate(&motor, flux_target, emf_target);
    println!("flux target            {flux_target} Wb");
    println!("emf target             {emf_target} V");
    println!("coil flux per tesla    {} Wb/T", cal.coil_flux_per_tesla);
    println!("pm field amplitude     {} T", cal.pm_field_t);
    println!("turns per phase        {}", cal.turns_per_phase);
    println!("predicted emf peak     {} V", cal.predicted_emf_peak_v);
    ExitCode::SUCCESS
}

fn cmd_frequencies(fs: f64, p: u32, kmax: u32, kind: &str) -> ExitCode {
    let kind = match kind {
        "eccentricity" | "ecc" => PatternKind::Eccentricity,
        "healthy" | "ud" => PatternKind::HealthySupport,
        "pd" | "partial_demag" => PatternKind::PartialDemag,
        other => {
            eprintln!("error: unknown pattern kind '{other}'");
            return ExitCode::from(1);
        }
    };
    match fault_frequency_pattern(kind, fs, p, kmax) {
        Ok(pattern) => {
            for f in &pattern.frequencies_hz {
                println!("{f}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn cmd_classify(table_path: &PathBuf, baseline: &str, thresholds: Thresholds) -> ExitCode {
    if let Err(e) = thresholds.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let text = match std::fs::read_to_string(table_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", table_path.display());
            return ExitCode::from(1);
        }
    };
    let table = match HarmonicTable::from_csv(&text) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let Some(healthy) = table.row_as_vector(baseline) else {
        eprintln!("error: no baseline row named '{baseline}' in the table");
        return ExitCode::from(1);
    };
    let mut failures = 0;
    for (label, _) in &table.rows {
        let row = table.row_as_vector(label).expect("row exists");
        match baseline_delta(&row, &healthy) {
            Ok(deltas) => {
                let report = classify(&deltas, &thresholds);
                println!(
                    "{label:<24} -> {:<13} severity {:+.2} dB",
                    report.label.to_string(),
                    report.severity_db
                );
            }
            Err(e) => {
                eprintln!("{label}: {e}");
                failures += 1;
            }
        }
    }
    if failures > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}
