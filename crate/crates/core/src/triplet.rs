//! Parametric gain and the closed-form vacuum-seeded triplet flux.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fm;
use crate::optics::{
    energy_to_field, overlap_factor, vacuum_field_amplitude, BeamGeometry, CrystalConfig, ModeSet,
};
use core::f64::consts::PI;

const K: PhysicalConstants = PhysicalConstants::CODATA_2018;

/// Which pair of coupling factors enters the gain parameter.
///
/// The dimensionally consistent choice pairs the gain with the generated
/// (signal/idler) waves; the pump/stimulation pairing is kept for
/// comparison because both appear in print.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BetaConvention {
    /// β ∝ √(κ_s κ_i) — default.
    #[default]
    SignalIdler,
    /// β ∝ √(κ_p κ_sti).
    PumpStimulation,
}

/// Everything a flux evaluation needs, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionConfig {
    /// The four interacting waves.
    pub modes: ModeSet,
    /// Pump beam geometry (also supplies the repetition rate and the pulse
    /// duration used for per-pulse conversion).
    pub pump_geometry: BeamGeometry,
    /// Stimulation beam geometry.
    pub stimulation_geometry: BeamGeometry,
    /// Nonlinear crystal.
    pub crystal: CrystalConfig,
    /// Pump pulse energy (J).
    pub pump_energy: f64,
    /// Stimulation pulse energy (J).
    pub stimulation_energy: f64,
    /// Beam-overlap factor override; `None` computes
    /// 1 − exp(−2(w_p/w_sti)²) from the waists.
    pub gamma_override: Option<f64>,
    /// Spectral width of the generated photons (rad/s).
    pub delta_omega: f64,
    /// Interaction cross section S (m²).
    pub cross_section: f64,
    /// Collinear wavevector mismatch (m⁻¹); the closed form requires 0.
    pub delta_k: f64,
    /// Multiplies the pump pulse duration to form the effective emission
    /// window of the per-pulse conversion.
    pub tau_eff_factor: f64,
    /// Coupling-factor pairing of the gain parameter.
    pub beta_convention: BetaConvention,
}

impl InteractionConfig {
    /// Check the numeric invariants that the individual constructors
    /// cannot see.
    pub fn validate(&self) -> Result<()> {
        if !(self.pump_energy >= 0.0) {
            return Err(Error::Domain {
                what: "pump energy must be >= 0",
                value: self.pump_energy,
            });
        }
        if !(self.stimulation_energy >= 0.0) {
            return Err(Error::Domain {
                what: "stimulation energy must be >= 0",
                value: self.stimulation_energy,
            });
        }
        if !(self.delta_omega > 0.0) {
            return Err(Error::Domain {
                what: "delta_omega must be positive",
                value: self.delta_omega,
            });
        }
        if !(self.cross_section > 0.0) {
            return Err(Error::Domain {
                what: "cross_section must be positive",
                value: self.cross_section,
            });
        }
        if let Some(g) = self.gamma_override {
            if !(g > 0.0 && g <= 1.0) {
                return Err(Error::Domain {
                    what: "gamma override must lie in (0, 1]",
                    value: g,
                });
            }
        }
        if !(self.tau_eff_factor > 0.0) {
            return Err(Error::Domain {
                what: "tau_eff factor must be positive",
                value: self.tau_eff_factor,
            });
        }
        if !self.delta_k.is_finite() {
            return Err(Error::Domain {
                what: "delta_k must be finite",
                value: self.delta_k,
            });
        }
        Ok(())
    }

    /// Beam-overlap factor: the override if set, otherwise computed from
    /// the two waists.
    pub fn gamma(&self) -> f64 {
        self.gamma_override.unwrap_or_else(|| {
            overlap_factor(
                self.pump_geometry.waist_radius,
                self.stimulation_geometry.waist_radius,
            )
        })
    }

    /// Pump field amplitude at the crystal entrance (V/m).
    pub fn pump_field(&self) -> f64 {
        energy_to_field(
            self.pump_energy,
            &self.pump_geometry,
            self.modes.pump.refractive_index,
        )
    }

    /// Stimulation field amplitude at the crystal entrance (V/m),
    /// before the overlap reduction.
    pub fn stimulation_field(&self) -> f64 {
        energy_to_field(
            self.stimulation_energy,
            &self.stimulation_geometry,
            self.modes.stimulation.refractive_index,
        )
    }

    /// Effective emission window for the per-pulse conversion (s).
    pub fn tau_eff(&self) -> f64 {
        self.pump_geometry.pulse_duration * self.tau_eff_factor
    }
}

/// Flux of generated triplets for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxResult {
    /// Photon-triplet rate while the pulse is on (s⁻¹).
    pub instantaneous_rate: f64,
    /// Triplets per pulse: rate × effective emission window.
    pub triplets_per_pulse: f64,
    /// Triplets per second of wall time: per pulse × repetition rate.
    pub triplets_per_second: f64,
    /// Dimensionless gain βL.
    pub beta_l: f64,
}

/// Pulse-shape factor ψ = (π/2)^{−3/2} · 4 / (c ε₀ τ n), satisfying
/// E² = ψ ξ / w² for a Gaussian pulse.
pub fn psi_factor(pulse_duration: f64, refractive_index: f64) -> f64 {
    assert!(
        pulse_duration > 0.0 && refractive_index > 0.0,
        "psi_factor inputs must be positive"
    );
    let pf = fm::sqrt((PI / 2.0) * (PI / 2.0) * (PI / 2.0));
    4.0 / (pf * K.c * K.eps0 * pulse_duration * refractive_index)
}

/// Parametric gain β = γ χ⁽³⁾ E_p(0) E_sti(0) √(κ κ') (m⁻¹), with the
/// entrance fields obtained from the pulse energies and the κ pair chosen
/// by `cfg.beta_convention`.
pub fn gain_parameter_beta(cfg: &InteractionConfig) -> f64 {
    let (ka, kb) = match cfg.beta_convention {
        BetaConvention::SignalIdler => (cfg.modes.signal.kappa(), cfg.modes.idler.kappa()),
        BetaConvention::PumpStimulation => {
            (cfg.modes.pump.kappa(), cfg.modes.stimulation.kappa())
        }
    };
    cfg.gamma() * cfg.crystal.chi3_eff * cfg.pump_field() * cfg.stimulation_field()
        * fm::sqrt(ka * kb)
}

/// Symmetric-mode closed-form flux: N(L) = (Δω/16π)(e^{βL} − 1)²  (s⁻¹).
pub fn triplet_flux_simplified(beta: f64, length: f64, delta_omega: f64) -> f64 {
    assert!(length > 0.0, "crystal length must be positive");
    let growth = fm::exp_m1(beta * length);
    delta_omega / (16.0 * PI) * growth * growth
}

/// General closed-form flux of the vacuum-seeded pair:
///
/// N(L) = (ε₀ n_s c S / 4ħω_s)
///        · [ΔE_s (cosh βL − 1) + √(ω_s n_i / ω_i n_s) ΔE_i sinh βL]²
///
/// with ΔE the vacuum amplitudes of the signal and idler modes evaluated
/// at `cfg.delta_omega` and `cfg.cross_section`. Requires collinear phase
/// matching; refuses otherwise.
pub fn triplet_flux_full(cfg: &InteractionConfig) -> Result<FluxResult> {
    cfg.validate()?;
    if cfg.delta_k != 0.0 {
        return Err(Error::PhaseMismatched {
            delta_k: cfg.delta_k,
        });
    }

    let signal = cfg.modes.signal.with_spectral_width(cfg.delta_omega);
    let idler = cfg.modes.idler.with_spectral_width(cfg.delta_omega);
    let de_s = vacuum_field_amplitude(&signal, cfg.cross_section)?;
    let de_i = vacuum_field_amplitude(&idler, cfg.cross_section)?;

    let beta = gain_parameter_beta(cfg);
    let beta_l = beta * cfg.crystal.length;

    let omega_s = signal.angular_frequency();
    let omega_i = idler.angular_frequency();
    let ratio = fm::sqrt(
        omega_s * idler.refractive_index / (omega_i * signal.refractive_index),
    );
    let bracket = de_s * (fm::cosh(beta_l) - 1.0) + ratio * de_i * fm::sinh(beta_l);
    let prefactor =
        K.eps0 * signal.refractive_index * K.c * cfg.cross_section / (4.0 * K.hbar * omega_s);
    let rate = prefactor * bracket * bracket;

    let per_pulse = rate * cfg.tau_eff();
    Ok(FluxResult {
        instantaneous_rate: rate,
        triplets_per_pulse: per_pulse,
        triplets_per_second: per_pulse * cfg.pump_geometry.repetition_rate,
        beta_l,
    })
}

/// How the effective emission window of one pulse is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauEffPolicy {
    /// τ_eff equals the pulse duration.
    PulseDuration,
    /// τ_eff is the pulse duration times this factor.
    Scaled(f64),
}

/// Convert an instantaneous rate into triplets per pulse.
pub fn triplets_per_pulse(rate: f64, geom: &BeamGeometry, policy: TauEffPolicy) -> f64 {
    assert!(rate >= 0.0, "rate must be >= 0");
    let tau_eff = match policy {
        TauEffPolicy::PulseDuration => geom.pulse_duration,
        TauEffPolicy::Scaled(factor) => {
            assert!(factor > 0.0, "tau_eff factor must be positive");
            geom.pulse_duration * factor
        }
    };
    rate * tau_eff
}

/// Ratio of two photon rates, e.g. triplets per pump photon.
pub fn quantum_efficiency(triplet_rate: f64, photon_rate: f64) -> Result<f64> {
    if !(photon_rate > 0.0) {
        return Err(Error::Domain {
            what: "photon rate must be positive",
            value: photon_rate,
        });
    }
    Ok(triplet_rate / photon_rate)
}
