//! The bundled coincidence dataset and external dataset loading.
//!
//! The built-in rows are the raw coincidence fractions of the reference
//! experiment, measured as a function of the input pulse energies with no
//! statistical correction: Set A varies the stimulation energy at fixed
//! pump energy, Set B varies the pump energy at fixed stimulation energy.

use crate::error::{PipelineError, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;

/// Which measurement series a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetLabel {
    A,
    B,
}

impl fmt::Display for SetLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetLabel::A => write!(f, "A"),
            SetLabel::B => write!(f, "B"),
        }
    }
}

impl std::str::FromStr for SetLabel {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "A" => Ok(SetLabel::A),
            "B" => Ok(SetLabel::B),
            other => Err(format!("unknown set label {other:?} (expected A or B)")),
        }
    }
}

/// One measured point: input energies with laser-fluctuation deviations
/// and the raw coincidence fraction with its measurement deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DataPoint {
    pub set: SetLabel,
    /// Pump pulse energy (μJ) and its deviation.
    pub pump_energy_uj: f64,
    pub pump_err_uj: f64,
    /// Stimulation pulse energy (μJ) and its deviation.
    pub stim_energy_uj: f64,
    pub stim_err_uj: f64,
    /// Raw coincidence fraction (coincidences per pulse) and deviation.
    pub eta_hat: f64,
    pub eta_err: f64,
}

impl DataPoint {
    /// Structural sanity of one row.
    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str, v: f64| {
            Err(PipelineError::Config(format!(
                "dataset point invalid: {what} (got {v})"
            )))
        };
        if !(self.pump_energy_uj > 0.0) {
            return bad("pump energy must be positive", self.pump_energy_uj);
        }
        if !(self.stim_energy_uj > 0.0) {
            return bad("stimulation energy must be positive", self.stim_energy_uj);
        }
        if !(self.eta_hat >= 0.0) {
            return bad("coincidence fraction must be >= 0", self.eta_hat);
        }
        if !(self.pump_err_uj >= 0.0 && self.stim_err_uj >= 0.0 && self.eta_err >= 0.0) {
            return bad("uncertainties must be >= 0", -1.0);
        }
        Ok(())
    }

    /// The energy varied within this point's set (μJ).
    pub fn tunable_energy_uj(&self) -> f64 {
        match self.set {
            SetLabel::A => self.stim_energy_uj,
            SetLabel::B => self.pump_energy_uj,
        }
    }

    /// Product of the two input energies (μJ²).
    pub fn energy_product_uj2(&self) -> f64 {
        self.pump_energy_uj * self.stim_energy_uj
    }
}

/// The eight bundled measurement rows.
///
/// Set A: pump fixed at 19.3 ± 4.7 μJ, stimulation varied.
/// Set B: stimulation fixed at 19 ± 3.8 μJ, pump varied.
/// Coincidence fractions are per pulse (the printed values are 10⁻³/pulse).
pub fn builtin_dataset() -> Vec<DataPoint> {
    let a = |stim: f64, stim_err: f64, eta_milli: f64, eta_err_milli: f64| DataPoint {
        set: SetLabel::A,
        pump_energy_uj: 19.3,
        pump_err_uj: 4.7,
        stim_energy_uj: stim,
        stim_err_uj: stim_err,
        eta_hat: eta_milli * 1e-3,
        eta_err: eta_err_milli * 1e-3,
    };
    let b = |pump: f64, pump_err: f64, eta_milli: f64, eta_err_milli: f64| DataPoint {
        set: SetLabel::B,
        pump_energy_uj: pump,
        pump_err_uj: pump_err,
        stim_energy_uj: 19.0,
        stim_err_uj: 3.8,
        eta_hat: eta_milli * 1e-3,
        eta_err: eta_err_milli * 1e-3,
    };
    vec![
        a(3.04, 0.6, 0.567, 0.125),
        a(5.01, 0.8, 1.77, 0.125),
        a(7.4, 1.3, 5.67, 0.118),
        a(9.0, 1.9, 8.78, 1.40),
        a(11.2, 1.6, 14.3, 3.42),
        b(8.1, 2.5, 1.33, 0.656),
        b(8.8, 2.2, 3.03, 1.24),
        b(9.5, 3.1, 4.33, 1.65),
    ]
}

/// Load an external dataset in the report CSV schema.
///
/// Only the input columns (`set`, energies with errors, `eta_hat`,
/// `eta_err`) are read; computed columns, if present, are ignored.
pub fn load_dataset(path: &Path) -> Result<Vec<DataPoint>> {
    let mut reader = csv::Reader::from_path(path).map_err(|e| match e.kind() {
        csv::ErrorKind::Io(_) => PipelineError::Config(format!(
            "cannot read dataset {}: {e}",
            path.display()
        )),
        _ => PipelineError::Config(format!("invalid dataset {}: {e}", path.display())),
    })?;
    let headers = reader
        .headers()
        .map_err(|e| PipelineError::Config(format!("invalid dataset {}: {e}", path.display())))?
        .clone();
    let col = |name: &str| -> Result<usize> {
        headers.iter().position(|h| h == name).ok_or_else(|| {
            PipelineError::Config(format!(
                "dataset {} is missing column {name:?}",
                path.display()
            ))
        })
    };
    let c_set = col("set")?;
    let c_xp = col("xi_p_uJ")?;
    let c_xpe = col("xi_p_err")?;
    let c_xs = col("xi_sti_uJ")?;
    let c_xse = col("xi_sti_err")?;
    let c_eta = col("eta_hat")?;
    let c_err = col("eta_err")?;

    let mut points = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            PipelineError::Config(format!("dataset {} row {}: {e}", path.display(), i + 1))
        })?;
        let field = |c: usize| -> Result<f64> {
            record
                .get(c)
                .ok_or_else(|| {
                    PipelineError::Config(format!(
                        "dataset {} row {} is short",
                        path.display(),
                        i + 1
                    ))
                })?
                .parse::<f64>()
                .map_err(|e| {
                    PipelineError::Config(format!(
                        "dataset {} row {}: {e}",
                        path.display(),
                        i + 1
                    ))
                })
        };
        let set: SetLabel = record
            .get(c_set)
            .unwrap_or("")
            .parse()
            .map_err(|e| PipelineError::Config(format!("dataset {} row {}: {e}", path.display(), i + 1)))?;
        let point = DataPoint {
            set,
            pump_energy_uj: field(c_xp)?,
            pump_err_uj: field(c_xpe)?,
            stim_energy_uj: field(c_xs)?,
            stim_err_uj: field(c_xse)?,
            eta_hat: field(c_eta)?,
            eta_err: field(c_err)?,
        };
        point.validate()?;
        points.push(point);
    }
    Ok(points)
}
