//! Batch run from a config file: loads `configs/matrix8.json`, executes every
//! scenario on the worker pool, and lists the emitted files.
//!
//! ```bash
//! cargo run --release --example scenario_runner
//! ```

use spmsm_diag::config::load_scenario;
use spmsm_diag::runner::run;

fn main() {
    let config_path = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/matrix8.json");
    let mut config = load_scenario(std::path::Path::new(config_path)).unwrap();
    config.output_dir = std::env::temp_dir().join("spmsm-diag-example");
    println!(
        "running {} scenarios into {} ...",
        config.scenarios.len(),
        config.output_dir.display()
    );
    let manifest = run(&config).unwrap();
    for outcome in &manifest.outcomes {
        println!(
            "  {:<22} {}  {:>7.1} ms",
            outcome.name,
            if outcome.ok { "ok    " } else { "FAILED" },
            outcome.wall_ms
        );
        for file in &outcome.files {
            println!("      {file}");
        }
    }
    for file in &manifest.shared_files {
        println!("  shared: {file}");
    }
    for note in &manifest.notes {
        println!("  note: {note}");
    }
    println!(
        "{} scenario(s) failed; manifest at {}/manifest.json",
        manifest.failed,
        config.output_dir.display()
    );
}
