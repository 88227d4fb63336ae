//! JSON configuration with unit-suffixed keys.
//!
//! Every physical quantity of the model is settable here; the defaults are
//! the bundled reference experiment, so an empty config file (or none at
//! all) reproduces the reference setup. Keys carry their unit in the name
//! (`energy_uJ`, `waist_um`) so a config file is auditable without a
//! manual. Each section has its own type so that a partially specified
//! section falls back to that section's defaults.

use crate::error::{PipelineError, Result};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use tpdc_core::coincidence::{DetectionSetup, PhotonStatistics};
use tpdc_core::optics::{
    Axis, BeamGeometry, CrystalConfig, ModeRole, ModeSet, OpticalMode, PolarizationAxis,
};
use tpdc_core::reference;
use tpdc_core::triplet::{BetaConvention, InteractionConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct PumpSection {
    pub wavelength_nm: f64,
    pub refractive_index: f64,
    pub polarization: PolarizationKey,
    pub spectral_width_nm: f64,
    pub waist_um: f64,
    pub pulse_duration_ps: f64,
    pub repetition_rate_hz: f64,
    pub energy_uJ: f64,
}

impl Default for PumpSection {
    fn default() -> Self {
        PumpSection {
            wavelength_nm: reference::PUMP_WAVELENGTH * 1e9,
            refractive_index: reference::PUMP_INDEX,
            polarization: PolarizationKey::Y,
            spectral_width_nm: 0.5,
            waist_um: reference::PUMP_WAIST * 1e6,
            pulse_duration_ps: reference::PULSE_DURATION * 1e12,
            repetition_rate_hz: reference::REPETITION_RATE,
            energy_uJ: reference::MAX_PUMP_ENERGY * 1e6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct StimulationSection {
    pub wavelength_nm: f64,
    pub refractive_index: f64,
    pub polarization: PolarizationKey,
    pub spectral_width_nm: f64,
    pub waist_um: f64,
    pub pulse_duration_ps: f64,
    pub repetition_rate_hz: f64,
    pub energy_uJ: f64,
}

impl Default for StimulationSection {
    fn default() -> Self {
        StimulationSection {
            wavelength_nm: reference::STIMULATION_WAVELENGTH * 1e9,
            refractive_index: reference::STIMULATION_INDEX,
            polarization: PolarizationKey::Z,
            spectral_width_nm: 3.2,
            waist_um: reference::STIMULATION_WAIST * 1e6,
            pulse_duration_ps: reference::PULSE_DURATION * 1e12,
            repetition_rate_hz: reference::REPETITION_RATE,
            energy_uJ: reference::MAX_STIMULATION_ENERGY * 1e6,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignalSection {
    pub wavelength_nm: f64,
    pub refractive_index: f64,
    pub polarization: PolarizationKey,
    pub spectral_width_nm: f64,
}

impl Default for SignalSection {
    fn default() -> Self {
        SignalSection {
            wavelength_nm: reference::SIGNAL_IDLER_WAVELENGTH * 1e9,
            refractive_index: reference::SIGNAL_INDEX,
            polarization: PolarizationKey::Y,
            spectral_width_nm: 3.56,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct IdlerSection {
    pub wavelength_nm: f64,
    pub refractive_index: f64,
    pub polarization: PolarizationKey,
    pub spectral_width_nm: f64,
}

impl Default for IdlerSection {
    fn default() -> Self {
        IdlerSection {
            wavelength_nm: reference::SIGNAL_IDLER_WAVELENGTH * 1e9,
            refractive_index: reference::IDLER_INDEX,
            polarization: PolarizationKey::Z,
            spectral_width_nm: 3.56,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[allow(non_snake_case)]
pub struct CrystalSection {
    pub length_cm: f64,
    pub chi3_eff_m2_per_V2: f64,
    pub axis: AxisKey,
}

impl Default for CrystalSection {
    fn default() -> Self {
        CrystalSection {
            length_cm: reference::CRYSTAL_LENGTH * 1e2,
            chi3_eff_m2_per_V2: reference::CHI3_EFF,
            axis: AxisKey::X,
        }
    }
}

/// Model-level choices that are not per-beam quantities.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelSection {
    /// Spectral width of the generated photons entering the vacuum seed
    /// and the flux formulas (rad/s).
    pub delta_omega_rad_per_s: f64,
    /// Interaction cross section: the pump waist disk, or an explicit
    /// area.
    pub cross_section: CrossSectionPolicy,
    /// Beam-overlap factor; `null` computes 1 − exp(−2(w_p/w_sti)²) from
    /// the waists.
    pub gamma_override: Option<f64>,
    /// Collinear wavevector mismatch (m⁻¹).
    pub delta_k_per_m: f64,
    /// Effective emission window as a multiple of the pump pulse
    /// duration.
    pub tau_eff_factor: f64,
    /// Coupling-factor pairing of the gain parameter.
    pub beta_convention: BetaConventionKey,
}

impl Default for ModelSection {
    fn default() -> Self {
        ModelSection {
            delta_omega_rad_per_s: reference::GENERATED_SPECTRAL_WIDTH,
            cross_section: CrossSectionPolicy::PumpWaistDisk,
            gamma_override: Some(reference::GAMMA_MEASURED),
            delta_k_per_m: 0.0,
            tau_eff_factor: 1.0,
            beta_convention: BetaConventionKey::SignalIdler,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectionSection {
    /// A number fixes the transfer function; the string `"fit"` requests
    /// a least-squares fit against the dataset.
    pub transfer_function: TfSetting,
    pub coincidence_window_ps: f64,
    pub dark_coincidence_rate_per_s: f64,
    pub statistics: StatisticsKey,
}

impl Default for DetectionSection {
    fn default() -> Self {
        DetectionSection {
            transfer_function: TfSetting::Value(reference::TRANSFER_FUNCTION),
            coincidence_window_ps: reference::COINCIDENCE_WINDOW * 1e12,
            dark_coincidence_rate_per_s: reference::DARK_COINCIDENCE_RATE,
            statistics: StatisticsKey::Poisson,
        }
    }
}

/// Whole config file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub pump: PumpSection,
    pub stimulation: StimulationSection,
    pub signal: SignalSection,
    pub idler: IdlerSection,
    pub crystal: CrystalSection,
    pub model: ModelSection,
    pub detection: DetectionSection,
    pub output_dir: String,
}

impl Default for ConfigFile {
    fn default() -> Self {
        ConfigFile {
            pump: PumpSection::default(),
            stimulation: StimulationSection::default(),
            signal: SignalSection::default(),
            idler: IdlerSection::default(),
            crystal: CrystalSection::default(),
            model: ModelSection::default(),
            detection: DetectionSection::default(),
            output_dir: "out".to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolarizationKey {
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisKey {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossSectionPolicy {
    PumpWaistDisk,
    Explicit { area_m2: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BetaConventionKey {
    SignalIdler,
    PumpStimulation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatisticsKey {
    Poisson,
    Thermal,
}

/// Fixed transfer-function value or a fit directive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TfSetting {
    Value(f64),
    Directive(TfDirective),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TfDirective {
    Fit,
}

/// Config resolved into core types, with the output directory.
#[derive(Debug, Clone)]
pub struct ResolvedConfig {
    pub interaction: InteractionConfig,
    pub detection: DetectionSetup,
    pub tf_setting: TfSetting,
    pub output_dir: PathBuf,
}

impl ResolvedConfig {
    /// Transfer function to use when one is already fixed; `None` when the
    /// config requests a fit.
    pub fn fixed_tf(&self) -> Option<f64> {
        match self.tf_setting {
            TfSetting::Value(v) => Some(v),
            TfSetting::Directive(TfDirective::Fit) => None,
        }
    }
}

impl ConfigFile {
    /// Parse a JSON config file. A missing or unreadable file, or a file
    /// that does not match the schema, is a configuration error.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            PipelineError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| PipelineError::Config(format!("invalid config {}: {e}", path.display())))
    }

    /// Resolve into validated core types.
    pub fn resolve(&self) -> Result<ResolvedConfig> {
        let as_config = |e: tpdc_core::Error| PipelineError::Config(e.to_string());

        let mode = |role: ModeRole,
                    wavelength_nm: f64,
                    n: f64,
                    pol: PolarizationKey,
                    width_nm: f64|
         -> Result<OpticalMode> {
            let lambda = wavelength_nm * 1e-9;
            let width = tpdc_core::optics::spectral_width_to_rad(width_nm * 1e-9, lambda)
                .map_err(as_config)?;
            OpticalMode::new(role, lambda, n, pol.into(), width).map_err(as_config)
        };

        let modes = ModeSet::from_modes([
            mode(
                ModeRole::Pump,
                self.pump.wavelength_nm,
                self.pump.refractive_index,
                self.pump.polarization,
                self.pump.spectral_width_nm,
            )?,
            mode(
                ModeRole::Stimulation,
                self.stimulation.wavelength_nm,
                self.stimulation.refractive_index,
                self.stimulation.polarization,
                self.stimulation.spectral_width_nm,
            )?,
            mode(
                ModeRole::Signal,
                self.signal.wavelength_nm,
                self.signal.refractive_index,
                self.signal.polarization,
                self.signal.spectral_width_nm,
            )?,
            mode(
                ModeRole::Idler,
                self.idler.wavelength_nm,
                self.idler.refractive_index,
                self.idler.polarization,
                self.idler.spectral_width_nm,
            )?,
        ])
        .map_err(as_config)?;

        let pump_geometry = BeamGeometry::new(
            self.pump.waist_um * 1e-6,
            self.pump.pulse_duration_ps * 1e-12,
            self.pump.repetition_rate_hz,
        )
        .map_err(as_config)?;
        let stimulation_geometry = BeamGeometry::new(
            self.stimulation.waist_um * 1e-6,
            self.stimulation.pulse_duration_ps * 1e-12,
            self.stimulation.repetition_rate_hz,
        )
        .map_err(as_config)?;

        let crystal = CrystalConfig::new(
            self.crystal.length_cm * 1e-2,
            self.crystal.chi3_eff_m2_per_V2,
            match self.crystal.axis {
                AxisKey::X => Axis::X,
                AxisKey::Y => Axis::Y,
                AxisKey::Z => Axis::Z,
            },
        )
        .map_err(as_config)?;

        let cross_section = match self.model.cross_section {
            CrossSectionPolicy::PumpWaistDisk => {
                let w = pump_geometry.waist_radius;
                std::f64::consts::PI * w * w
            }
            CrossSectionPolicy::Explicit { area_m2 } => area_m2,
        };

        let interaction = InteractionConfig {
            modes,
            pump_geometry,
            stimulation_geometry,
            crystal,
            pump_energy: self.pump.energy_uJ * 1e-6,
            stimulation_energy: self.stimulation.energy_uJ * 1e-6,
            gamma_override: self.model.gamma_override,
            delta_omega: self.model.delta_omega_rad_per_s,
            cross_section,
            delta_k: self.model.delta_k_per_m,
            tau_eff_factor: self.model.tau_eff_factor,
            beta_convention: match self.model.beta_convention {
                BetaConventionKey::SignalIdler => BetaConvention::SignalIdler,
                BetaConventionKey::PumpStimulation => BetaConvention::PumpStimulation,
            },
        };
        interaction.validate().map_err(as_config)?;

        let tf_for_setup = match self.detection.transfer_function {
            TfSetting::Value(v) => v,
            // Placeholder inside the search range; callers that fit
            // substitute the fitted value.
            TfSetting::Directive(TfDirective::Fit) => reference::TRANSFER_FUNCTION,
        };
        let detection = DetectionSetup::new(
            tf_for_setup,
            self.pump.repetition_rate_hz,
            self.detection.coincidence_window_ps * 1e-12,
            self.detection.dark_coincidence_rate_per_s,
            match self.detection.statistics {
                StatisticsKey::Poisson => PhotonStatistics::Poisson,
                StatisticsKey::Thermal => PhotonStatistics::Thermal,
            },
        )
        .map_err(as_config)?;

        Ok(ResolvedConfig {
            interaction,
            detection,
            tf_setting: self.detection.transfer_function,
            output_dir: PathBuf::from(&self.output_dir),
        })
    }
}

impl From<PolarizationKey> for PolarizationAxis {
    fn from(k: PolarizationKey) -> Self {
        match k {
            PolarizationKey::Y => PolarizationAxis::Y,
            PolarizationKey::Z => PolarizationAxis::Z,
        }
    }
}
