//! Error type shared by all modules.

use std::fmt;

/// Errors produced by specs, models, synthesis, and the scenario runner.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A motor or vehicle parameter set violates one of its invariants.
    InvalidSpec(String),
    /// A fault description is out of range (severity bounds, pole index).
    InvalidFault(String),
    /// An operation received inputs it cannot work with.
    InvalidInput(String),
    /// The magnet sizing relation cannot sustain the requested airgap field.
    DemagnetizationRisk(String),
    /// The eccentric rotor touches the stator bore at some angle.
    RotorContact {
        gap_m: f64,
        theta_rad: f64,
        time_s: f64,
    },
    /// A requested spectral line lies above the Nyquist frequency.
    OutOfBand { frequency_hz: f64, nyquist_hz: f64 },
    /// Spectra with different bin resolutions cannot share a table.
    InconsistentScenarios(String),
    /// Scenario configuration file problems (parse errors, unknown keys).
    Config(String),
    /// Filesystem problems while emitting outputs.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSpec(msg) => write!(f, "invalid spec: {msg}"),
            Error::InvalidFault(msg) => write!(f, "invalid fault: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::DemagnetizationRisk(msg) => write!(f, "demagnetization risk: {msg}"),
            Error::RotorContact {
                gap_m,
                theta_rad,
                time_s,
            } => write!(
                f,
                "rotor contact: gap {gap_m:.6e} m at theta {theta_rad:.4} rad, t {time_s:.6} s \
                 (fault too severe)"
            ),
            Error::OutOfBand {
                frequency_hz,
                nyquist_hz,
            } => write!(
                f,
                "target frequency {frequency_hz} Hz is above Nyquist {nyquist_hz} Hz"
            ),
            Error::InconsistentScenarios(msg) => write!(f, "inconsistent scenarios: {msg}"),
            Error::Config(msg) => write!(f, "config error: {msg}"),
            Error::Io(msg) => write!(f, "io error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
