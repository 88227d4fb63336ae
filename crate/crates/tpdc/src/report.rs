//! Model/measurement comparison tables and their CSV form.

use crate::config::ResolvedConfig;
use crate::dataset::{DataPoint, SetLabel};
use crate::error::{PipelineError, Result};
use std::path::Path;
use tpdc_core::coincidence::invert_coincidence_fraction;
use tpdc_core::triplet::triplet_flux_full;

/// One comparison row: inputs, measured triplets per pulse with its
/// interval, model triplets per pulse, both normalized to the set's
/// lowest-energy row, and the normalized residual.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportRow {
    pub set: SetLabel,
    pub xi_p_uj: f64,
    pub xi_p_err: f64,
    pub xi_sti_uj: f64,
    pub xi_sti_err: f64,
    pub eta_hat: f64,
    pub eta_err: f64,
    /// Measured triplets per pulse via the coincidence inversion.
    pub n_measured: f64,
    /// Inversion of eta − sigma (clamped at zero).
    pub n_meas_lo: f64,
    /// Inversion of eta + sigma.
    pub n_meas_hi: f64,
    /// Model triplets per pulse.
    pub n_model: f64,
    /// n_measured / n_measured(reference row).
    pub norm_measured: f64,
    /// n_model / n_model(reference row).
    pub norm_model: f64,
    /// norm_measured − norm_model.
    pub residual: f64,
}

/// Model triplets per pulse at one dataset point's energies.
fn model_n_per_pulse(point: &DataPoint, rc: &ResolvedConfig) -> Result<f64> {
    let mut interaction = rc.interaction;
    interaction.pump_energy = point.pump_energy_uj * 1e-6;
    interaction.stimulation_energy = point.stim_energy_uj * 1e-6;
    Ok(triplet_flux_full(&interaction)?.triplets_per_pulse)
}

/// Comparison rows for one measurement set, sorted by the set's tunable
/// energy; the first row is the normalization reference.
pub fn run_set(
    set: SetLabel,
    points: &[DataPoint],
    rc: &ResolvedConfig,
    transfer_function: f64,
) -> Result<Vec<ReportRow>> {
    let mut selected: Vec<&DataPoint> = points.iter().filter(|p| p.set == set).collect();
    if selected.is_empty() {
        return Err(PipelineError::Config(format!(
            "dataset has no rows for set {set}"
        )));
    }
    selected.sort_by(|a, b| a.tunable_energy_uj().total_cmp(&b.tunable_energy_uj()));

    let mut rows = Vec::with_capacity(selected.len());
    for p in &selected {
        p.validate()?;
        let n_measured = invert_coincidence_fraction(p.eta_hat, transfer_function)?;
        let n_meas_lo =
            invert_coincidence_fraction((p.eta_hat - p.eta_err).max(0.0), transfer_function)?;
        let n_meas_hi = invert_coincidence_fraction(p.eta_hat + p.eta_err, transfer_function)?;
        let n_model = model_n_per_pulse(p, rc)?;
        rows.push(ReportRow {
            set,
            xi_p_uj: p.pump_energy_uj,
            xi_p_err: p.pump_err_uj,
            xi_sti_uj: p.stim_energy_uj,
            xi_sti_err: p.stim_err_uj,
            eta_hat: p.eta_hat,
            eta_err: p.eta_err,
            n_measured,
            n_meas_lo,
            n_meas_hi,
            n_model,
            norm_measured: 0.0,
            norm_model: 0.0,
            residual: 0.0,
        });
    }

    let ref_measured = rows[0].n_measured;
    let ref_model = rows[0].n_model;
    if !(ref_measured > 0.0) || !(ref_model > 0.0) {
        return Err(PipelineError::Config(format!(
            "set {set} reference row has zero flux; cannot normalize"
        )));
    }
    for row in &mut rows {
        row.norm_measured = row.n_measured / ref_measured;
        row.norm_model = row.n_model / ref_model;
        row.residual = row.norm_measured - row.norm_model;
    }
    Ok(rows)
}

/// Propagated error band of one row's *normalized* measured value.
///
/// Both the row's own deviation and the normalization reference's
/// deviation are monotone-pushed through the inversion, so the band is
/// [n_lo(i)/n_hi(ref), n_hi(i)/n_lo(ref)]. `rows` must come from
/// [`run_set`] (reference first).
pub fn normalized_measured_band(rows: &[ReportRow], index: usize) -> (f64, f64) {
    let reference = &rows[0];
    let row = &rows[index];
    (
        row.n_meas_lo / reference.n_meas_hi,
        row.n_meas_hi / reference.n_meas_lo.max(f64::MIN_POSITIVE),
    )
}

/// One point of the absolute-flux comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsolutePoint {
    pub set: SetLabel,
    /// ξ_p · ξ_sti (μJ²).
    pub energy_product_uj2: f64,
    /// Model triplets per second of wall time.
    pub model_per_s: f64,
    /// Measured triplets per second via the inversion.
    pub measured_per_s: f64,
    pub measured_lo: f64,
    pub measured_hi: f64,
}

/// Absolute-magnitude comparison over all dataset points, sorted by the
/// energy product.
pub fn absolute_curve(
    points: &[DataPoint],
    rc: &ResolvedConfig,
    transfer_function: f64,
) -> Result<Vec<AbsolutePoint>> {
    let rep_rate = rc.interaction.pump_geometry.repetition_rate;
    let mut out = Vec::with_capacity(points.len());
    for p in points {
        p.validate()?;
        let mut interaction = rc.interaction;
        interaction.pump_energy = p.pump_energy_uj * 1e-6;
        interaction.stimulation_energy = p.stim_energy_uj * 1e-6;
        let flux = triplet_flux_full(&interaction)?;
        let measured = invert_coincidence_fraction(p.eta_hat, transfer_function)? * rep_rate;
        let lo = invert_coincidence_fraction((p.eta_hat - p.eta_err).max(0.0), transfer_function)?
            * rep_rate;
        let hi = invert_coincidence_fraction(p.eta_hat + p.eta_err, transfer_function)? * rep_rate;
        out.push(AbsolutePoint {
            set: p.set,
            energy_product_uj2: p.energy_product_uj2(),
            model_per_s: flux.triplets_per_second,
            measured_per_s: measured,
            measured_lo: lo,
            measured_hi: hi,
        });
    }
    out.sort_by(|a, b| a.energy_product_uj2.total_cmp(&b.energy_product_uj2));
    Ok(out)
}

/// Least-squares global scale factor bringing the model onto the
/// measurements: argmin_s Σ (measured − s·model)².
pub fn global_scale_factor(curve: &[AbsolutePoint]) -> f64 {
    let num: f64 = curve.iter().map(|p| p.measured_per_s * p.model_per_s).sum();
    let den: f64 = curve.iter().map(|p| p.model_per_s * p.model_per_s).sum();
    num / den
}

/// Pair each dataset point's model prediction with its measurement, as
/// input to the transfer-function fit.
pub fn fit_points(
    points: &[DataPoint],
    rc: &ResolvedConfig,
) -> Result<Vec<tpdc_core::coincidence::FitPoint>> {
    points
        .iter()
        .map(|p| {
            Ok(tpdc_core::coincidence::FitPoint {
                predicted_n: model_n_per_pulse(p, rc)?,
                eta_hat: p.eta_hat,
                sigma: p.eta_err,
            })
        })
        .collect()
}

/// Normalized model flux sampled along the set's tunable energy, for
/// plotting next to the normalized measured points. `rows` must come from
/// [`run_set`] (sorted, reference first).
pub fn normalized_model_curve(
    rows: &[ReportRow],
    rc: &ResolvedConfig,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let set = rows[0].set;
    let reference = rows[0].n_model;
    let (lo, hi) = (
        match set {
            SetLabel::A => rows[0].xi_sti_uj,
            SetLabel::B => rows[0].xi_p_uj,
        },
        match set {
            SetLabel::A => rows[rows.len() - 1].xi_sti_uj,
            SetLabel::B => rows[rows.len() - 1].xi_p_uj,
        },
    );
    let mut curve = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = lo + (hi - lo) * i as f64 / (samples - 1) as f64;
        let mut interaction = rc.interaction;
        match set {
            SetLabel::A => {
                interaction.pump_energy = rows[0].xi_p_uj * 1e-6;
                interaction.stimulation_energy = x * 1e-6;
            }
            SetLabel::B => {
                interaction.pump_energy = x * 1e-6;
                interaction.stimulation_energy = rows[0].xi_sti_uj * 1e-6;
            }
        }
        let n = triplet_flux_full(&interaction)?.triplets_per_pulse;
        curve.push((x, n / reference));
    }
    Ok(curve)
}

/// Model triplets-per-second curve sampled along the energy product
/// (μJ²). The gain depends on the energies only through their product, so
/// the split between pump and stimulation is immaterial.
pub fn absolute_model_curve(
    curve_points: &[AbsolutePoint],
    rc: &ResolvedConfig,
    samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let lo = curve_points[0].energy_product_uj2;
    let hi = curve_points[curve_points.len() - 1].energy_product_uj2;
    let mut curve = Vec::with_capacity(samples);
    for i in 0..samples {
        // Geometric spacing; the plot is log-log.
        let t = i as f64 / (samples - 1) as f64;
        let product = lo * (hi / lo).powf(t);
        let mut interaction = rc.interaction;
        let pump_uj = rc.interaction.pump_energy * 1e6;
        interaction.pump_energy = pump_uj * 1e-6;
        interaction.stimulation_energy = product / pump_uj * 1e-6;
        let per_s = triplet_flux_full(&interaction)?.triplets_per_second;
        curve.push((product, per_s));
    }
    Ok(curve)
}

/// CSV header of the report schema.
pub const CSV_HEADER: [&str; 14] = [
    "set",
    "xi_p_uJ",
    "xi_p_err",
    "xi_sti_uJ",
    "xi_sti_err",
    "eta_hat",
    "eta_err",
    "n_measured",
    "n_meas_lo",
    "n_meas_hi",
    "n_model",
    "norm_measured",
    "norm_model",
    "residual",
];

/// Render rows as CSV bytes: comma separated, decimal points, no quoting,
/// line-feed terminators. Shortest-roundtrip float formatting keeps the
/// emission a pure function of the rows.
pub fn render_csv(rows: &[ReportRow]) -> Vec<u8> {
    let mut writer = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Never)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER).expect("in-memory write");
    for r in rows {
        writer
            .write_record(&[
                r.set.to_string(),
                r.xi_p_uj.to_string(),
                r.xi_p_err.to_string(),
                r.xi_sti_uj.to_string(),
                r.xi_sti_err.to_string(),
                r.eta_hat.to_string(),
                r.eta_err.to_string(),
                r.n_measured.to_string(),
                r.n_meas_lo.to_string(),
                r.n_meas_hi.to_string(),
                r.n_model.to_string(),
                r.norm_measured.to_string(),
                r.norm_model.to_string(),
                r.residual.to_string(),
            ])
            .expect("in-memory write");
    }
    writer.into_inner().expect("in-memory flush")
}

/// Write rows to a CSV file (whole-file atomic).
pub fn emit_csv(rows: &[ReportRow], path: &Path) -> Result<()> {
    crate::atomic_write(path, &render_csv(rows))
}

/// Parse a report CSV produced by [`emit_csv`].
pub fn parse_report_csv(path: &Path) -> Result<Vec<ReportRow>> {
    let text = std::fs::read_to_string(path).map_err(PipelineError::io(path))?;
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record.map_err(|e| {
            PipelineError::Config(format!("report {} row {}: {e}", path.display(), i + 1))
        })?;
        let f = |c: usize| -> Result<f64> {
            record
                .get(c)
                .ok_or_else(|| {
                    PipelineError::Config(format!(
                        "report {} row {} is short",
                        path.display(),
                        i + 1
                    ))
                })?
                .parse()
                .map_err(|e| {
                    PipelineError::Config(format!("report {} row {}: {e}", path.display(), i + 1))
                })
        };
        rows.push(ReportRow {
            set: record.get(0).unwrap_or("").parse().map_err(|e| {
                PipelineError::Config(format!("report {} row {}: {e}", path.display(), i + 1))
            })?,
            xi_p_uj: f(1)?,
            xi_p_err: f(2)?,
            xi_sti_uj: f(3)?,
            xi_sti_err: f(4)?,
            eta_hat: f(5)?,
            eta_err: f(6)?,
            n_measured: f(7)?,
            n_meas_lo: f(8)?,
            n_meas_hi: f(9)?,
            n_model: f(10)?,
            norm_measured: f(11)?,
            norm_model: f(12)?,
            residual: f(13)?,
        });
    }
    Ok(rows)
}
