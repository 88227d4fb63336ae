//! Command-line interface.
//!
//! Exit codes: 0 success, 1 configuration error (including usage errors),
//! 2 numerical error, 3 IO error.

use crate::config::{ConfigFile, ResolvedConfig, TfSetting};
use crate::dataset::{builtin_dataset, load_dataset, DataPoint, SetLabel};
use crate::error::{PipelineError, Result};
use crate::report::{
    absolute_curve, absolute_model_curve, emit_csv, fit_points, global_scale_factor,
    normalized_measured_band, normalized_model_curve, run_set, AbsolutePoint, ReportRow,
};
use crate::svg::{emit_svg_plot, AxesSpec, ErrorBarPoint, PlotData, PlotScale};
use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::path::PathBuf;
use tpdc_core::coincidence::{
    check_single_triplet_criterion, fit_transfer_function, invert_coincidence_fraction,
    simulate_pulses, DetectionSetup,
};
use tpdc_core::triplet::{gain_parameter_beta, triplet_flux_full};

#[derive(Parser, Debug)]
#[command(
    name = "tpdc",
    version,
    about = "Stimulated photon-triplet generation: flux model, coincidence simulation, and reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CommonArgs {
    /// JSON config file; omitted means the built-in reference setup
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Override the detection transfer function
    #[arg(long, value_name = "VALUE")]
    tf: Option<f64>,
    /// Override the beam-overlap factor
    #[arg(long, value_name = "VALUE")]
    gamma: Option<f64>,
    /// Output directory (report artifacts)
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// External dataset CSV in the report schema; omitted means the
    /// bundled dataset
    #[arg(long, value_name = "PATH")]
    dataset: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the triplet flux for one pair of pulse energies
    Model {
        #[command(flatten)]
        common: CommonArgs,
        /// Pump pulse energy (μJ)
        #[arg(long = "xi-p-uj", value_name = "UJ")]
        xi_p_uj: Option<f64>,
        /// Stimulation pulse energy (μJ)
        #[arg(long = "xi-sti-uj", value_name = "UJ")]
        xi_sti_uj: Option<f64>,
    },
    /// Full dataset comparison: per-set CSVs, normalized and absolute SVGs
    Report {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo run of the two-detector coincidence protocol
    Simulate {
        #[command(flatten)]
        common: CommonArgs,
        /// RNG seed
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Number of pulses
        #[arg(long, default_value_t = 1_000_000)]
        pulses: u64,
        /// Mean triplets per pulse; omitted means the model prediction at
        /// the configured energies
        #[arg(long = "n-mean", value_name = "VALUE")]
        n_mean: Option<f64>,
    },
    /// Fit the detection transfer function to the dataset
    FitTf {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the internal consistency suite
    Check {
        #[command(flatten)]
        common: CommonArgs,
    },
}

/// Entry point used by `main` and by tests; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // Help/version go to stdout with success; usage errors go to
            // stderr with the configuration exit code.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Session {
    rc: ResolvedConfig,
    data: Vec<DataPoint>,
}

fn open_session(common: &CommonArgs) -> Result<Session> {
    let mut file = match &common.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    if let Some(tf) = common.tf {
        file.detection.transfer_function = TfSetting::Value(tf);
    }
    if let Some(gamma) = common.gamma {
        file.model.gamma_override = Some(gamma);
    }
    if let Some(out) = &common.out {
        file.output_dir = out.display().to_string();
    }
    let rc = file.resolve()?;
    let data = match &common.dataset {
        Some(path) => load_dataset(path)?,
        None => builtin_dataset(),
    };
    Ok(Session { rc, data })
}

impl Session {
    /// The transfer function to use: the fixed value, or a fresh fit when
    /// the config says `"fit"`.
    fn transfer_function(&self) -> Result<f64> {
        match self.rc.fixed_tf() {
            Some(v) => Ok(v),
            None => {
                let points = fit_points(&self.data, &self.rc)?;
                let fit = fit_transfer_function(&points)?;
                println!(
                    "fitted transfer function: {:.4} (1-sigma interval [{:.4}, {:.4}])",
                    fit.t_f, fit.interval.0, fit.interval.1
                );
                Ok(fit.t_f)
            }
        }
    }

    fn detection_with_tf(&self, tf: f64) -> Result<DetectionSetup> {
        DetectionSetup::new(
            tf,
            self.rc.detection.rep_rate,
            self.rc.detection.coincidence_window,
            self.rc.detection.dark_coincidence_rate,
            self.rc.detection.photon_number_statistics,
        )
        .map_err(PipelineError::from)
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Model {
            common,
            xi_p_uj,
            xi_sti_uj,
        } => {
            let session = open_session(&common)?;
            let mut interaction = session.rc.interaction;
            if let Some(xi_p) = xi_p_uj {
                interaction.pump_energy = xi_p * 1e-6;
            }
            if let Some(xi_sti) = xi_sti_uj {
                interaction.stimulation_energy = xi_sti * 1e-6;
            }
            let flux = triplet_flux_full(&interaction)?;
            let beta = gain_parameter_beta(&interaction);
            println!(
                "energies: pump {:.4} uJ, stimulation {:.4} uJ",
                interaction.pump_energy * 1e6,
                interaction.stimulation_energy * 1e6
            );
            println!("gamma (beam overlap)    = {:.4}", interaction.gamma());
            println!("beta                    = {beta:.4} 1/m");
            println!("beta * L                = {:.6}", flux.beta_l);
            println!(
                "instantaneous rate      = {:.6e} triplets/s",
                flux.instantaneous_rate
            );
            println!("triplets per pulse      = {:.6}", flux.triplets_per_pulse);
            println!(
                "triplets per second     = {:.6}",
                flux.triplets_per_second
            );
            let check = check_single_triplet_criterion(flux.triplets_per_pulse);
            println!(
                "single-triplet criterion: {} (margin {:.4})",
                if check.satisfied { "pass" } else { "violated" },
                check.margin
            );
            Ok(())
        }

        Command::Report { common } => {
            let session = open_session(&common)?;
            let tf = session.transfer_function()?;
            let out_dir = session.rc.output_dir.clone();
            std::fs::create_dir_all(&out_dir).map_err(PipelineError::io(&out_dir))?;

            for (set, csv_name, svg_name) in [
                (SetLabel::A, "set_a.csv", "set_a_normalized.svg"),
                (SetLabel::B, "set_b.csv", "set_b_normalized.svg"),
            ] {
                let rows = run_set(set, &session.data, &session.rc, tf)?;
                emit_csv(&rows, &out_dir.join(csv_name))?;
                let plot = normalized_plot(set, &rows, &session.rc)?;
                emit_svg_plot(&plot, &out_dir.join(svg_name))?;
                print_set_table(set, &rows);
            }

            let curve = absolute_curve(&session.data, &session.rc, tf)?;
            let scale = global_scale_factor(&curve);
            emit_absolute_csv(&curve, &out_dir.join("absolute_flux.csv"))?;
            let plot = absolute_plot(&curve, &session.rc)?;
            emit_svg_plot(&plot, &out_dir.join("absolute_flux.svg"))?;

            println!("absolute comparison over {} points:", curve.len());
            println!(
                "  measured range {:.3} to {:.3} triplets/s",
                curve.first().map(|p| p.measured_per_s).unwrap_or(0.0),
                curve.last().map(|p| p.measured_per_s).unwrap_or(0.0)
            );
            println!("  least-squares model scale factor: {scale:.3}");
            println!("artifacts written to {}", out_dir.display());
            Ok(())
        }

        Command::Simulate {
            common,
            seed,
            pulses,
            n_mean,
        } => {
            let session = open_session(&common)?;
            let tf = session.transfer_function()?;
            let setup = session.detection_with_tf(tf)?;
            let n_mean = match n_mean {
                Some(v) => v,
                None => triplet_flux_full(&session.rc.interaction)?.triplets_per_pulse,
            };
            let result = simulate_pulses(n_mean, &setup, pulses, seed);
            println!("seed                 = {}", result.rng_seed);
            println!("pulses               = {}", result.pulses);
            println!("mean triplets/pulse  = {n_mean:.6}");
            println!("transfer function    = {tf:.4}");
            println!("coincidences         = {}", result.coincidences);
            println!("eta_hat              = {:.6e}", result.eta_hat);
            println!(
                "eta 95% interval     = [{:.6e}, {:.6e}]",
                result.eta_ci.0, result.eta_ci.1
            );
            let estimate = invert_coincidence_fraction(result.eta_hat, tf)?;
            println!("inverted triplets/pulse = {estimate:.6}");
            println!(
                "inverted triplets/s     = {:.6}",
                estimate * setup.rep_rate
            );
            Ok(())
        }

        Command::FitTf { common } => {
            let session = open_session(&common)?;
            let points = fit_points(&session.data, &session.rc)?;
            let fit = fit_transfer_function(&points)?;
            println!("data points          = {}", points.len());
            println!("fitted T_F           = {:.4}", fit.t_f);
            println!(
                "1-sigma interval     = [{:.4}, {:.4}]",
                fit.interval.0, fit.interval.1
            );
            Ok(())
        }

        Command::Check { common } => {
            let session = open_session(&common)?;
            if crate::check::run_checks(&session.rc)? {
                println!("all checks passed");
                Ok(())
            } else {
                Err(PipelineError::SelfCheck(
                    "one or more consistency checks failed".to_string(),
                ))
            }
        }
    }
}

fn print_set_table(set: SetLabel, rows: &[ReportRow]) {
    println!("set {set} ({} points):", rows.len());
    println!("  tunable_uJ    eta_hat    N_meas/pulse  N_model/pulse  norm_meas  norm_model");
    for r in rows {
        let tunable = match set {
            SetLabel::A => r.xi_sti_uj,
            SetLabel::B => r.xi_p_uj,
        };
        println!(
            "  {tunable:>10.3}  {:>9.3e}  {:>12.4}  {:>13.4}  {:>9.3}  {:>10.3}",
            r.eta_hat, r.n_measured, r.n_model, r.norm_measured, r.norm_model
        );
    }
}

fn normalized_plot(set: SetLabel, rows: &[ReportRow], rc: &ResolvedConfig) -> Result<PlotData> {
    let points = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let (lo, hi) = normalized_measured_band(rows, i);
            let (x, xe) = match set {
                SetLabel::A => (r.xi_sti_uj, r.xi_sti_err),
                SetLabel::B => (r.xi_p_uj, r.xi_p_err),
            };
            ErrorBarPoint {
                x,
                x_lo: x - xe,
                x_hi: x + xe,
                y: r.norm_measured,
                y_lo: lo,
                y_hi: hi,
            }
        })
        .collect();
    let curve = normalized_model_curve(rows, rc, 100)?;
    let tunable = match set {
        SetLabel::A => "stimulation energy (uJ)",
        SetLabel::B => "pump energy (uJ)",
    };
    Ok(PlotData {
        axes: AxesSpec {
            title: format!("Set {set}: normalized triplet flux"),
            x_label: tunable.to_string(),
            y_label: "flux / flux(lowest energy)".to_string(),
            scale: PlotScale::Linear,
        },
        points,
        curve,
        measured_label: "measured (inverted coincidences)".to_string(),
        model_label: "semiclassical model".to_string(),
    })
}

fn absolute_plot(curve_points: &[AbsolutePoint], rc: &ResolvedConfig) -> Result<PlotData> {
    let points = curve_points
        .iter()
        .map(|p| ErrorBarPoint {
            x: p.energy_product_uj2,
            x_lo: p.energy_product_uj2,
            x_hi: p.energy_product_uj2,
            y: p.measured_per_s,
            y_lo: p.measured_lo,
            y_hi: p.measured_hi,
        })
        .collect();
    let curve = absolute_model_curve(curve_points, rc, 100)?;
    Ok(PlotData {
        axes: AxesSpec {
            title: "Absolute triplet flux".to_string(),
            x_label: "pump x stimulation energy (uJ^2)".to_string(),
            y_label: "triplets per second".to_string(),
            scale: PlotScale::LogLog,
        },
        points,
        curve,
        measured_label: "measured (inverted coincidences)".to_string(),
        model_label: "semiclassical model".to_string(),
    })
}

fn emit_absolute_csv(curve: &[AbsolutePoint], path: &std::path::Path) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .quote_style(csv::QuoteStyle::Never)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer
        .write_record([
            "set",
            "energy_product_uJ2",
            "model_per_s",
            "measured_per_s",
            "measured_lo",
            "measured_hi",
        ])
        .expect("in-memory write");
    for p in curve {
        writer
            .write_record(&[
                p.set.to_string(),
                p.energy_product_uj2.to_string(),
                p.model_per_s.to_string(),
                p.measured_per_s.to_string(),
                p.measured_lo.to_string(),
                p.measured_hi.to_string(),
            ])
            .expect("in-memory write");
    }
    crate::atomic_write(path, &writer.into_inner().expect("in-memory flush"))
}
