//! Config-driven scenario runner: synthesis → spectrum → sidebands →
//! diagnosis, with CSV/JSON/SVG emission.
//!
//! Scenarios execute concurrently on a small worker pool; output assembly is
//! serialized in scenario order afterwards, so data files are byte-identical
//! for any worker count. Files are written atomically (temp + rename). The
//! manifest carries timings and is the only output that varies across runs.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;

use crate::config::ScenarioConfig;
use crate::diagnosis::{baseline_delta, classify, DiagnosisReport, FaultLabel};
use crate::error::{Error, Result};
use crate::fault::{fault_frequency_pattern, PatternKind};
use crate::plot::{line_chart, Series};
use crate::spectral::{asbc, harmonic_table, spectrum, AsbcVector, Spectrum};
use crate::synth::{synthesize_waveforms, Unit, Waveform, WaveformSet};

/// Pinned waveform CSV header.
pub const WAVEFORM_CSV_HEADER: &str =
    "t_s,flux_a_wb,flux_b_wb,flux_c_wb,emf_a_v,emf_b_v,emf_c_v,i_a_a,i_b_a,i_c_a,torque_nm";

/// Per-scenario record in the run manifest.
#[derive(Debug, Clone, Serialize)]
pub struct ScenarioOutcome {
    pub name: String,
    pub ok: bool,
    pub error: Option<String>,
    pub files: Vec<String>,
    pub wall_ms: f64,
}

/// Summary of one `run` invocation.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool_version: String,
    pub config: ScenarioConfig,
    pub outcomes: Vec<ScenarioOutcome>,
    pub shared_files: Vec<String>,
    pub notes: Vec<String>,
    pub failed: usize,
}

struct ScenarioData {
    set: WaveformSet,
    spectrum: Spectrum,
    sidebands: AsbcVector,
    /// EMF amplitude at the supply frequency in dB, for the attenuation note.
    fundamental_db: f64,
}

type ScenarioSlot = Mutex<Option<(std::result::Result<ScenarioData, Error>, f64)>>;

/// Execute every scenario and emit the requested outputs.
///
/// Per-scenario synthesis errors are recorded in the manifest without
/// aborting the siblings; filesystem errors abort the run.
pub fn run(config: &ScenarioConfig) -> Result<RunManifest> {
    config.validate()?;
    std::fs::create_dir_all(&config.output_dir)?;

    let pattern = fault_frequency_pattern(
        PatternKind::Eccentricity,
        config.motor.supply_frequency_hz,
        config.motor.pole_pairs,
        4,
    )?;

    let n = config.scenarios.len();
    let results: Vec<ScenarioSlot> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let worker_count = if config.workers == 0 {
        std::thread::available_parallelism()
            .map(|c| c.get())
            .unwrap_or(1)
    } else {
        config.workers
    }
    .clamp(1, n);

    std::thread::scope(|scope| {
        for _ in 0..worker_count {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let started = Instant::now();
                let outcome = compute_scenario(config, i, &pattern);
                let wall_ms = started.elapsed().as_secs_f64() * 1e3;
                *results[i].lock().unwrap() = Some((outcome, wall_ms));
            });
        }
    });

    let mut outcomes = Vec::with_capacity(n);
    let mut data: Vec<Option<ScenarioData>> = Vec::with_capacity(n);
    for (scenario, cell) in config.scenarios.iter().zip(results) {
        let (result, wall_ms) = cell.into_inner().unwrap().expect("worker completed");
        match result {
            Ok(d) => {
                outcomes.push(ScenarioOutcome {
                    name: scenario.name.clone(),
                    ok: true,
                    error: None,
                    files: Vec::new(),
                    wall_ms,
                });
                data.push(Some(d));
            }
            Err(e) => {
                outcomes.push(ScenarioOutcome {
                    name: scenario.name.clone(),
                    ok: false,
                    error: Some(e.to_string()),
                    files: Vec::new(),
                    wall_ms,
                });
                data.push(None);
            }
        }
    }

    let mut notes = Vec::new();
    let mut shared_files = Vec::new();

    // Per-scenario artifacts, in declaration order.
    for (i, scenario) in config.scenarios.iter().enumerate() {
        let Some(d) = &data[i] else { continue };
        let dir = &config.output_dir;
        if config.outputs.waveforms {
            let path = dir.join(format!("{}_waveforms.csv", scenario.name));
            write_atomic(&path, waveform_set_to_csv(&d.set).as_bytes())?;
            outcomes[i].files.push(display(&path));
        }
        if config.outputs.spectra {
            let path = dir.join(format!("{}_spectrum.csv", scenario.name));
            write_atomic(&path, spectrum_to_csv(&d.spectrum).as_bytes())?;
            outcomes[i].files.push(display(&path));
        }
        if config.outputs.plots {
            let path = dir.join(format!("{}_emf.svg", scenario.name));
            write_atomic(&path, emf_chart(&d.set, &scenario.name).as_bytes())?;
            outcomes[i].files.push(display(&path));
            let path = dir.join(format!("{}_spectrum.svg", scenario.name));
            write_atomic(
                &path,
                spectrum_chart(&d.spectrum, &scenario.name).as_bytes(),
            )?;
            outcomes[i].files.push(display(&path));
        }
    }

    if config.outputs.harmonic_table {
        let rows: Vec<(String, &Spectrum)> = config
            .scenarios
            .iter()
            .zip(&data)
            .filter_map(|(s, d)| d.as_ref().map(|d| (s.name.clone(), &d.spectrum)))
            .collect();
        if !rows.is_empty() {
            let table = harmonic_table(&rows, &pattern)?;
            let path = config.output_dir.join("harmonic_table.csv");
            write_atomic(&path, table.to_csv().as_bytes())?;
            shared_files.push(display(&path));
        }
    }

    if config.outputs.report {
        let baseline_idx = config
            .baseline_index()
            .expect("validated: baseline exists when report=true");
        match &data[baseline_idx] {
            None => notes.push("reports suppressed: the healthy baseline scenario failed".into()),
            Some(baseline) => {
                let mut wrote_any = false;
                for (i, scenario) in config.scenarios.iter().enumerate() {
                    if i == baseline_idx {
                        continue;
                    }
                    let Some(d) = &data[i] else { continue };
                    let deltas = baseline_delta(&d.sidebands, &baseline.sidebands)?;
                    let mut report = classify(&deltas, &config.thresholds);
                    let fundamental_delta = d.fundamental_db - baseline.fundamental_db;
                    if report.label == FaultLabel::Healthy && fundamental_delta <= -3.0 {
                        report.notes.push(format!(
                            "observation: sideband support matches healthy but the supply \
                             fundamental dropped {fundamental_delta:.2} dB; uniform \
                             demagnetization presents this way and needs amplitude \
                             calibration to confirm"
                        ));
                    }
                    let path = config
                        .output_dir
                        .join(format!("{}_report.json", scenario.name));
                    let json =
                        serde_json::to_string_pretty(&ReportFile::new(&scenario.name, &report))
                            .expect("report serializes");
                    write_atomic(&path, json.as_bytes())?;
                    outcomes[i].files.push(display(&path));
                    wrote_any = true;
                }
                if !wrote_any {
                    notes.push(
                        "report suppressed: only the healthy baseline ran, nothing to \
                         diagnose against itself"
                            .into(),
                    );
                }
            }
        }
    }

    let failed = outcomes.iter().filter(|o| !o.ok).count();
    let manifest = RunManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        outcomes,
        shared_files,
        notes,
        failed,
    };
    let manifest_path = config.output_dir.join("manifest.json");
    write_atomic(
        &manifest_path,
        serde_json::to_string_pretty(&manifest)
            .expect("manifest serializes")
            .as_bytes(),
    )?;
    Ok(manifest)
}

/// On-disk shape of a diagnosis report.
#[derive(Serialize)]
struct ReportFile<'a> {
    scenario: &'a str,
    label: String,
    severity_db: f64,
    deltas: Vec<DeltaEntry>,
    notes: &'a [String],
    thresholds: &'a crate::diagnosis::Thresholds,
}

#[derive(Serialize)]
struct DeltaEntry {
    freq_hz: f64,
    delta_db: f64,
}

impl<'a> ReportFile<'a> {
    fn new(scenario: &'a str, report: &'a DiagnosisReport) -> Self {
        Self {
            scenario,
            label: report.label.to_string(),
            severity_db: report.severity_db,
            deltas: report
                .deltas
                .frequencies_hz
                .iter()
                .zip(report.deltas.deltas_db)
                .map(|(&freq_hz, delta_db)| DeltaEntry { freq_hz, delta_db })
                .collect(),
            notes: &report.notes,
            thresholds: &report.thresholds,
        }
    }
}

fn compute_scenario(
    config: &ScenarioConfig,
    index: usize,
    pattern: &crate::fault::FrequencyPattern,
) -> std::result::Result<ScenarioData, Error> {
    let scenario = &config.scenarios[index];
    let set = synthesize_waveforms(&config.motor, &scenario.fault, &config.sim)?;
    let spec = spectrum(&set.back_emf[0])?;
    let sidebands = asbc(&spec, pattern)?;
    let fundamental_db = spec
        .amplitude_db_at(config.motor.supply_frequency_hz)
        .unwrap_or(crate::spectral::DB_FLOOR);
    Ok(ScenarioData {
        set,
        spectrum: spec,
        sidebands,
        fundamental_db,
    })
}

fn display(path: &Path) -> String {
    path.display().to_string()
}

/// Write through a temp file and rename, so readers never see partial data.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = PathBuf::from(path);
    tmp.set_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Render a waveform set as the pinned 11-column CSV.
pub fn waveform_set_to_csv(set: &WaveformSet) -> String {
    let n = set.torque.len();
    let rate = set.torque.sample_rate_hz;
    let start = set.torque.start_time_s;
    let mut out = String::with_capacity(n * 96);
    out.push_str(WAVEFORM_CSV_HEADER);
    out.push('\n');
    for j in 0..n {
        let t = start + j as f64 / rate;
        out.push_str(&t.to_string());
        for w in set
            .flux_linkage
            .iter()
            .chain(&set.back_emf)
            .chain(&set.current)
        {
            out.push(',');
            out.push_str(&w.samples[j].to_string());
        }
        out.push(',');
        out.push_str(&set.torque.samples[j].to_string());
        out.push('\n');
    }
    out
}

/// Parse a waveform CSV back into a waveform set.
///
/// The mechanical speed is not stored in the CSV; it is returned as zero and
/// is not needed for spectral work.
pub fn waveform_set_from_csv(text: &str) -> Result<WaveformSet> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::InvalidInput("empty waveform CSV".into()))?;
    if header.trim() != WAVEFORM_CSV_HEADER {
        return Err(Error::InvalidInput(format!(
            "unexpected waveform CSV header: '{header}'"
        )));
    }
    let mut times = Vec::new();
    let mut columns: [Vec<f64>; 10] = Default::default();
    for (lineno, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 11 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected 11 fields, got {}",
                lineno + 2,
                fields.len()
            )));
        }
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidInput(format!("line {}: bad number '{s}'", lineno + 2)))
        };
        times.push(parse(fields[0])?);
        for (k, field) in fields[1..].iter().enumerate() {
            columns[k].push(parse(field)?);
        }
    }
    if times.len() < 2 {
        return Err(Error::InvalidInput(
            "waveform CSV has fewer than 2 rows".into(),
        ));
    }
    let rate = (times.len() - 1) as f64 / (times[times.len() - 1] - times[0]);
    let start = times[0];
    let mut iter = columns.into_iter();
    let mut take = |unit: Unit| Waveform::new(iter.next().unwrap(), rate, start, unit);
    Ok(WaveformSet {
        flux_linkage: [take(Unit::Weber), take(Unit::Weber), take(Unit::Weber)],
        back_emf: [take(Unit::Volt), take(Unit::Volt), take(Unit::Volt)],
        current: [take(Unit::Ampere), take(Unit::Ampere), take(Unit::Ampere)],
        torque: take(Unit::NewtonMetre),
        mech_speed_rad_s: 0.0,
    })
}

/// Render a spectrum as `freq_hz,amplitude_db` rows.
pub fn spectrum_to_csv(s: &Spectrum) -> String {
    let mut out = String::with_capacity(s.amplitudes_db.len() * 24);
    out.push_str("freq_hz,amplitude_db\n");
    for (freq, amp) in s.bins() {
        out.push_str(&freq.to_string());
        out.push(',');
        out.push_str(&amp.to_string());
        out.push('\n');
    }
    out
}

fn emf_chart(set: &WaveformSet, name: &str) -> String {
    // One mechanical period is enough to see the fault signature.
    let rate = set.back_emf[0].sample_rate_hz;
    let mech_period_samples = (set.back_emf[0].len() / 8)
        .max(2)
        .min(set.back_emf[0].len());
    let series_points: Vec<Vec<(f64, f64)>> = set
        .back_emf
        .iter()
        .map(|w| {
            w.samples[..mech_period_samples]
                .iter()
                .enumerate()
                .map(|(j, &v)| (j as f64 / rate, v))
                .collect()
        })
        .collect();
    let series: Vec<Series> = series_points
        .iter()
        .zip(["phase a", "phase b", "phase c"])
        .map(|(points, label)| Series { label, points })
        .collect();
    line_chart(&format!("{name}: back-EMF"), "time (s)", "EMF (V)", &series)
}

fn spectrum_chart(s: &Spectrum, name: &str) -> String {
    let points: Vec<(f64, f64)> = s.bins().take_while(|(f, _)| *f <= 700.0).collect();
    line_chart(
        &format!("{name}: EMF spectrum"),
        "frequency (Hz)",
        "amplitude (dB)",
        &[Series {
            label: "single-sided",
            points: &points,
        }],
    )
}
