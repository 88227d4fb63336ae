//! Per-wave optical quantities: frequencies, coupling factors, Gaussian
//! pulse energy/field conversion, vacuum-seed amplitudes, beam overlap and
//! collinear phase matching.

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::fm;
use core::f64::consts::PI;

const K: PhysicalConstants = PhysicalConstants::CODATA_2018;

/// Which of the four interacting waves a mode is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeRole {
    Pump,
    Stimulation,
    Signal,
    Idler,
}

impl ModeRole {
    /// All roles in the canonical (pump, stimulation, signal, idler) order
    /// used to index field amplitudes.
    pub const ALL: [ModeRole; 4] = [
        ModeRole::Pump,
        ModeRole::Stimulation,
        ModeRole::Signal,
        ModeRole::Idler,
    ];

    /// Canonical index of this role.
    pub fn index(self) -> usize {
        match self {
            ModeRole::Pump => 0,
            ModeRole::Stimulation => 1,
            ModeRole::Signal => 2,
            ModeRole::Idler => 3,
        }
    }
}

/// Crystal-frame polarization axis of a wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarizationAxis {
    Y,
    Z,
}

/// Crystal propagation axis label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl core::fmt::Display for Axis {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Axis::X => write!(f, "x"),
            Axis::Y => write!(f, "y"),
            Axis::Z => write!(f, "z"),
        }
    }
}

/// One interacting wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpticalMode {
    pub role: ModeRole,
    /// Vacuum wavelength (m).
    pub wavelength: f64,
    /// Refractive index at this wavelength and polarization.
    pub refractive_index: f64,
    pub polarization_axis: PolarizationAxis,
    /// Spectral width (rad/s).
    pub spectral_width: f64,
}

impl OpticalMode {
    /// Validated constructor.
    pub fn new(
        role: ModeRole,
        wavelength: f64,
        refractive_index: f64,
        polarization_axis: PolarizationAxis,
        spectral_width: f64,
    ) -> Result<Self> {
        if !(wavelength > 0.0) {
            return Err(Error::Domain {
                what: "mode wavelength must be positive",
                value: wavelength,
            });
        }
        if !(refractive_index >= 1.0) {
            return Err(Error::Domain {
                what: "refractive index must be >= 1",
                value: refractive_index,
            });
        }
        if !(spectral_width >= 0.0) {
            return Err(Error::Domain {
                what: "spectral width must be >= 0",
                value: spectral_width,
            });
        }
        Ok(OpticalMode {
            role,
            wavelength,
            refractive_index,
            polarization_axis,
            spectral_width,
        })
    }

    /// Angular frequency ω = 2πc/λ (rad/s).
    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * K.c / self.wavelength
    }

    /// Coupling factor κ = ω / (2 n c) (m⁻¹) of the coupled-wave equations.
    pub fn kappa(&self) -> f64 {
        self.angular_frequency() / (2.0 * self.refractive_index * K.c)
    }

    /// Copy of this mode with a different spectral width.
    pub fn with_spectral_width(mut self, spectral_width: f64) -> Self {
        self.spectral_width = spectral_width;
        self
    }
}

/// Waist, duration and repetition rate of an input beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    /// 1/e² intensity waist radius at focus (m).
    pub waist_radius: f64,
    /// Pulse duration (s).
    pub pulse_duration: f64,
    /// Pulse repetition rate (Hz).
    pub repetition_rate: f64,
}

impl BeamGeometry {
    /// Validated constructor; all fields must be strictly positive.
    pub fn new(waist_radius: f64, pulse_duration: f64, repetition_rate: f64) -> Result<Self> {
        for (what, v) in [
            ("waist radius must be positive", waist_radius),
            ("pulse duration must be positive", pulse_duration),
            ("repetition rate must be positive", repetition_rate),
        ] {
            if !(v > 0.0) {
                return Err(Error::Domain { what, value: v });
            }
        }
        Ok(BeamGeometry {
            waist_radius,
            pulse_duration,
            repetition_rate,
        })
    }
}

/// Nonlinear crystal parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrystalConfig {
    /// Crystal length along the propagation axis (m).
    pub length: f64,
    /// Effective third-order susceptibility (m²/V²).
    pub chi3_eff: f64,
    /// Propagation axis label.
    pub axis: Axis,
}

impl CrystalConfig {
    /// Validated constructor; length and susceptibility must be positive.
    pub fn new(length: f64, chi3_eff: f64, axis: Axis) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::Domain {
                what: "crystal length must be positive",
                value: length,
            });
        }
        if !(chi3_eff > 0.0) {
            return Err(Error::Domain {
                what: "chi3_eff must be positive",
                value: chi3_eff,
            });
        }
        Ok(CrystalConfig {
            length,
            chi3_eff,
            axis,
        })
    }
}

/// The four interacting waves, exactly one per role.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSet {
    pub pump: OpticalMode,
    pub stimulation: OpticalMode,
    pub signal: OpticalMode,
    pub idler: OpticalMode,
}

impl ModeSet {
    /// Build from four modes in any order, requiring one mode per role.
    pub fn from_modes(modes: [OpticalMode; 4]) -> Result<Self> {
        let mut slots: [Option<OpticalMode>; 4] = [None; 4];
        for m in modes {
            let slot = &mut slots[m.role.index()];
            if slot.is_some() {
                return Err(Error::Config {
                    what: "duplicate mode role in mode set",
                });
            }
            *slot = Some(m);
        }
        // All four slots filled follows from 4 modes and no duplicates.
        Ok(ModeSet {
            pump: slots[0].unwrap(),
            stimulation: slots[1].unwrap(),
            signal: slots[2].unwrap(),
            idler: slots[3].unwrap(),
        })
    }

    /// Mode with the given role.
    pub fn by_role(&self, role: ModeRole) -> &OpticalMode {
        match role {
            ModeRole::Pump => &self.pump,
            ModeRole::Stimulation => &self.stimulation,
            ModeRole::Signal => &self.signal,
            ModeRole::Idler => &self.idler,
        }
    }

    /// Collinear phase-matching residual
    /// Δk = (ω_p n_p − ω_sti n_sti − ω_s n_s − ω_i n_i) / c  (m⁻¹).
    ///
    /// Zero means the interaction is momentum-conserving for collinear
    /// propagation.
    pub fn phase_mismatch(&self) -> f64 {
        let term = |m: &OpticalMode| m.angular_frequency() * m.refractive_index;
        (term(&self.pump) - term(&self.stimulation) - term(&self.signal) - term(&self.idler)) / K.c
    }
}

/// Phase mismatch of four modes supplied in any order.
///
/// Errors if the modes do not cover each role exactly once.
pub fn phase_mismatch(modes: [OpticalMode; 4]) -> Result<f64> {
    Ok(ModeSet::from_modes(modes)?.phase_mismatch())
}

/// Spectral width conversion Δω = 2πc·Δλ/λ² (rad/s).
pub fn spectral_width_to_rad(delta_lambda: f64, lambda: f64) -> Result<f64> {
    if !(delta_lambda > 0.0) {
        return Err(Error::Domain {
            what: "delta_lambda must be positive",
            value: delta_lambda,
        });
    }
    if !(lambda > 0.0) {
        return Err(Error::Domain {
            what: "lambda must be positive",
            value: lambda,
        });
    }
    Ok(2.0 * PI * K.c * delta_lambda / (lambda * lambda))
}

/// Gaussian-pulse energy for a given complex-amplitude magnitude:
/// ξ = (τ/4)(π/2)^{3/2} ε₀ c n (wE)².
pub fn field_to_energy(field: f64, geom: &BeamGeometry, refractive_index: f64) -> f64 {
    assert!(field >= 0.0, "field amplitude must be >= 0");
    let pulse_factor = geom.pulse_duration / 4.0 * fm::sqrt((PI / 2.0) * (PI / 2.0) * (PI / 2.0));
    let we = geom.waist_radius * field;
    pulse_factor * K.eps0 * K.c * refractive_index * we * we
}

/// Inverse of [`field_to_energy`]: the complex-amplitude magnitude of a
/// Gaussian pulse carrying energy ξ.
pub fn energy_to_field(energy: f64, geom: &BeamGeometry, refractive_index: f64) -> f64 {
    assert!(energy >= 0.0, "pulse energy must be >= 0");
    let pulse_factor = geom.pulse_duration / 4.0 * fm::sqrt((PI / 2.0) * (PI / 2.0) * (PI / 2.0));
    let denom =
        pulse_factor * K.eps0 * K.c * refractive_index * geom.waist_radius * geom.waist_radius;
    fm::sqrt(energy / denom)
}

/// Vacuum-fluctuation amplitude assigned to an unseeded mode:
/// ΔE = √(Δω ħω / (4π c ε₀ n S)), with S the interaction cross section.
pub fn vacuum_field_amplitude(mode: &OpticalMode, cross_section: f64) -> Result<f64> {
    if !(cross_section > 0.0) {
        return Err(Error::Domain {
            what: "cross_section must be positive",
            value: cross_section,
        });
    }
    if !(mode.spectral_width > 0.0) {
        return Err(Error::Domain {
            what: "spectral width must be positive for a vacuum seed",
            value: mode.spectral_width,
        });
    }
    let omega = mode.angular_frequency();
    let num = mode.spectral_width * K.hbar * omega;
    let den = 4.0 * PI * K.c * K.eps0 * mode.refractive_index * cross_section;
    Ok(fm::sqrt(num / den))
}

/// Fraction of the wider beam's energy overlapping the narrower pump disk:
/// γ = 1 − exp(−2 (w_p / w_sti)²).
pub fn overlap_factor(pump_waist: f64, stimulation_waist: f64) -> f64 {
    assert!(
        pump_waist > 0.0 && stimulation_waist > 0.0,
        "waist radii must be positive"
    );
    let r = pump_waist / stimulation_waist;
    -fm::exp_m1(-2.0 * r * r)
}

/// Photon rate of a pulsed beam: (ξ/ħω) · f_rep (s⁻¹).
pub fn photons_per_second(energy: f64, lambda: f64, rep_rate: f64) -> f64 {
    assert!(energy >= 0.0, "energy must be >= 0");
    assert!(lambda > 0.0 && rep_rate > 0.0, "lambda and rep_rate must be positive");
    let omega = 2.0 * PI * K.c / lambda;
    energy / (K.hbar * omega) * rep_rate
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn mode(lambda: f64, n: f64) -> OpticalMode {
        OpticalMode::new(ModeRole::Signal, lambda, n, PolarizationAxis::Y, 2.489e12).unwrap()
    }

    #[test]
    fn angular_frequency_reference_points() {
        assert_relative_eq!(
            mode(532e-9, 1.79).angular_frequency(),
            3.541e15,
            max_relative = 1e-3
        );
        assert_relative_eq!(
            mode(1654e-9, 1.732).angular_frequency(),
            1.139e15,
            max_relative = 1e-3
        );
    }

    #[test]
    fn angular_frequency_decreases_with_wavelength() {
        let mut last = f64::INFINITY;
        for lam in [0.4e-6, 1e-6, 10e-6, 1e-3, 1.0] {
            let w = mode(lam, 1.5).angular_frequency();
            assert!(w > 0.0 && w < last);
            last = w;
        }
    }

    #[test]
    fn spectral_width_reference_points() {
        // Pump: 0.5 nm at 532 nm.
        assert_relative_eq!(
            spectral_width_to_rad(0.5e-9, 532e-9).unwrap(),
            3.33e12,
            max_relative = 5e-3
        );
        // Stimulation: 3.2 nm at 1491 nm.
        assert_relative_eq!(
            spectral_width_to_rad(3.2e-9, 1491e-9).unwrap(),
            2.71e12,
            max_relative = 5e-3
        );
        // Generated photons: 3.56 nm at 1654 nm lands near 2.45e12.
        assert_relative_eq!(
            spectral_width_to_rad(3.56e-9, 1654e-9).unwrap(),
            2.45e12,
            max_relative = 1e-3
        );
    }

    #[test]
    fn spectral_width_rejects_non_positive() {
        assert!(spectral_width_to_rad(0.0, 532e-9).is_err());
        assert!(spectral_width_to_rad(1e-9, -1.0).is_err());
    }

    #[test]
    fn kappa_reference_points() {
        assert_relative_eq!(mode(1654e-9, 1.732).kappa(), 1.096e6, max_relative = 2e-3);
        assert_relative_eq!(mode(1654e-9, 1.813).kappa(), 1.047e6, max_relative = 2e-3);
    }

    #[test]
    fn kappa_inverse_in_index() {
        let k1 = mode(1654e-9, 1.4).kappa();
        let k2 = mode(1654e-9, 2.8).kappa();
        assert_relative_eq!(k2, k1 / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn energy_field_reference_point() {
        let geom = BeamGeometry::new(47.5e-6, 15e-12, 10.0).unwrap();
        let e = energy_to_field(19.3e-6, &geom, 1.79);
        assert_relative_eq!(e, 4.94e8, max_relative = 2e-3);
        assert_relative_eq!(field_to_energy(e, &geom, 1.79), 19.3e-6, max_relative = 1e-12);
        assert_eq!(energy_to_field(0.0, &geom, 1.79), 0.0);
        assert_eq!(field_to_energy(0.0, &geom, 1.79), 0.0);
    }

    #[test]
    fn field_to_energy_is_quadratic() {
        let geom = BeamGeometry::new(50e-6, 10e-12, 10.0).unwrap();
        let x1 = field_to_energy(1e8, &geom, 1.8);
        let x2 = field_to_energy(2e8, &geom, 1.8);
        assert_relative_eq!(x2, 4.0 * x1, max_relative = 1e-12);
    }

    #[test]
    fn vacuum_amplitude_reference_point() {
        let s = PI * 47.5e-6 * 47.5e-6;
        let m = mode(1654e-9, 1.732);
        let de = vacuum_field_amplitude(&m, s).unwrap();
        // Prints as roughly 27 V/m.
        assert_relative_eq!(de, 26.7, max_relative = 0.03);
    }

    #[test]
    fn vacuum_amplitude_limits() {
        let m = mode(1654e-9, 1.732);
        assert!(vacuum_field_amplitude(&m, 0.0).is_err());
        let zero_width = m.with_spectral_width(0.0);
        assert!(vacuum_field_amplitude(&zero_width, 1e-9).is_err());

        // Quadrupling the cross section halves the amplitude.
        let a = vacuum_field_amplitude(&m, 1e-9).unwrap();
        let b = vacuum_field_amplitude(&m, 4e-9).unwrap();
        assert_relative_eq!(b, a / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn overlap_factor_reference_points() {
        assert_relative_eq!(overlap_factor(47.5e-6, 72.5e-6), 0.576, max_relative = 1e-3);
        assert_relative_eq!(
            overlap_factor(1.0, 1.0),
            1.0 - (-2.0f64).exp(),
            max_relative = 1e-12
        );
        // Widening stimulation beam loses overlap.
        assert!(overlap_factor(47.5e-6, 1.0) < 1e-6);
    }

    #[test]
    fn phase_mismatch_cases() {
        let m = |role, lambda, n| {
            OpticalMode::new(role, lambda, n, PolarizationAxis::Y, 1e12).unwrap()
        };
        // Indices chosen so the collinear sum closes exactly.
        let w_p = m(ModeRole::Pump, 532e-9, 1.0).angular_frequency();
        let w_sti = m(ModeRole::Stimulation, 1491e-9, 1.0).angular_frequency();
        let w_si = m(ModeRole::Signal, 1654e-9, 1.0).angular_frequency();
        let n_p = (w_sti * 1.82 + w_si * (1.732 + 1.813)) / w_p;
        let modes = [
            m(ModeRole::Pump, 532e-9, n_p),
            m(ModeRole::Stimulation, 1491e-9, 1.82),
            m(ModeRole::Signal, 1654e-9, 1.732),
            m(ModeRole::Idler, 1654e-9, 1.813),
        ];
        let dk = phase_mismatch(modes).unwrap();
        assert!(dk.abs() < 1e-6, "dk = {dk}");

        // Perturbing n_s by +1e-3 shifts dk by -omega_s * 1e-3 / c.
        let mut perturbed = modes;
        perturbed[2].refractive_index += 1e-3;
        let dk2 = phase_mismatch(perturbed).unwrap();
        assert_relative_eq!(
            dk2 - dk,
            -w_si * 1e-3 / crate::constants::SPEED_OF_LIGHT,
            max_relative = 1e-9
        );
    }

    #[test]
    fn mode_set_rejects_duplicate_roles() {
        let m = mode(1654e-9, 1.7);
        let err = ModeSet::from_modes([m, m, m, m]).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
    }

    #[test]
    fn photons_per_second_reference_points() {
        assert_relative_eq!(
            photons_per_second(19.3e-6, 532e-9, 10.0),
            5.2e14,
            max_relative = 0.01
        );
        assert_relative_eq!(
            photons_per_second(11.2e-6, 1491e-9, 10.0),
            8.4e14,
            max_relative = 0.01
        );
        assert_eq!(photons_per_second(0.0, 532e-9, 10.0), 0.0);
    }

    #[test]
    fn constructors_enforce_invariants() {
        assert!(OpticalMode::new(ModeRole::Pump, -1.0, 1.5, PolarizationAxis::Y, 0.0).is_err());
        assert!(OpticalMode::new(ModeRole::Pump, 532e-9, 0.9, PolarizationAxis::Y, 0.0).is_err());
        assert!(OpticalMode::new(ModeRole::Pump, 532e-9, 1.5, PolarizationAxis::Y, -1.0).is_err());
        assert!(BeamGeometry::new(0.0, 1e-12, 10.0).is_err());
        assert!(BeamGeometry::new(1e-6, -1.0, 10.0).is_err());
        assert!(CrystalConfig::new(0.0, 1e-22, Axis::X).is_err());
        assert!(CrystalConfig::new(0.01, 0.0, Axis::X).is_err());
    }
}
