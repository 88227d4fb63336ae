//! Fixed-step fourth-order integration of the four coupled wave equations.
//!
//! The equations advanced along the crystal axis Z are
//!
//! ```text
//! dE_s/dZ   =  i κ_s   χ E_p  E*_sti E*_i  e^{−iΔkZ}
//! dE_i/dZ   =  i κ_i   χ E_p  E*_sti E*_s  e^{−iΔkZ}
//! dE_sti/dZ =  i κ_sti χ E_p  E*_s   E*_i  e^{−iΔkZ}
//! dE_p/dZ   =  i κ_p   χ E_sti E_s   E_i   e^{+iΔkZ}
//! ```
//!
//! Under the undepleted-pump approximation the last two derivatives are
//! held at zero. For Δk = 0 and constant pump/stimulation the first pair
//! linearizes to cosh/sinh growth with rate β = χ E_p E_sti √(κ_s κ_i),
//! which is the solution behind the closed-form flux in [`crate::triplet`].

use crate::error::{Error, Result};
use crate::fm;
use crate::optics::{vacuum_field_amplitude, ModeRole};
use crate::triplet::InteractionConfig;
use num_complex::Complex64;

/// Complex field amplitudes of the four waves at one position inside the
/// crystal, indexed by [`ModeRole`] in canonical order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldState {
    /// Position along the propagation axis (m), in [0, L].
    pub z: f64,
    /// Amplitudes (V/m) in (pump, stimulation, signal, idler) order.
    pub amplitudes: [Complex64; 4],
}

impl FieldState {
    /// State at the crystal entrance with explicit amplitudes.
    pub fn at_entrance(amplitudes: [Complex64; 4]) -> Self {
        FieldState { z: 0.0, amplitudes }
    }

    /// Entrance state for a vacuum-seeded run of `cfg`:
    ///
    /// * pump and stimulation amplitudes are real, from the pulse
    ///   energies; the stimulation amplitude carries the beam-overlap
    ///   factor γ so that the linearized growth rate matches
    ///   [`crate::triplet::gain_parameter_beta`];
    /// * the signal seed is the real vacuum amplitude ΔE_s;
    /// * the idler seed is i·ΔE_i, the quadrature that the parametric
    ///   gain amplifies (the closed-form flux assumes the amplified
    ///   quadrature).
    pub fn vacuum_seeded(cfg: &InteractionConfig) -> Result<Self> {
        cfg.validate()?;
        let signal = cfg.modes.signal.with_spectral_width(cfg.delta_omega);
        let idler = cfg.modes.idler.with_spectral_width(cfg.delta_omega);
        let de_s = vacuum_field_amplitude(&signal, cfg.cross_section)?;
        let de_i = vacuum_field_amplitude(&idler, cfg.cross_section)?;
        Ok(FieldState::at_entrance([
            Complex64::new(cfg.pump_field(), 0.0),
            Complex64::new(cfg.gamma() * cfg.stimulation_field(), 0.0),
            Complex64::new(de_s, 0.0),
            Complex64::new(0.0, de_i),
        ]))
    }

    /// Amplitude of one role.
    pub fn amplitude(&self, role: ModeRole) -> Complex64 {
        self.amplitudes[role.index()]
    }

    /// Photon-flux proxy n|E|²/ω of one role, the conserved currency of
    /// the Manley-Rowe relations.
    pub fn photon_flux_proxy(&self, role: ModeRole, cfg: &InteractionConfig) -> f64 {
        let mode = cfg.modes.by_role(role);
        mode.refractive_index * self.amplitude(role).norm_sqr() / mode.angular_frequency()
    }

    fn is_finite(&self) -> bool {
        self.amplitudes
            .iter()
            .all(|a| a.re.is_finite() && a.im.is_finite())
    }
}

/// Integration options.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropagationOptions {
    /// Evolve pump and stimulation too (`true`) or hold them constant
    /// under the undepleted-pump approximation (`false`).
    pub depleted: bool,
    /// Number of fixed steps over the crystal length; at least 100.
    pub steps: usize,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        PropagationOptions {
            depleted: false,
            steps: 10_000,
        }
    }
}

struct Coupling {
    kappa: [f64; 4],
    chi: f64,
    delta_k: f64,
    depleted: bool,
}

impl Coupling {
    /// Right-hand side of the coupled system at position `z`.
    fn derivative(&self, z: f64, e: &[Complex64; 4]) -> [Complex64; 4] {
        let i = Complex64::new(0.0, 1.0);
        let phase = self.delta_k * z;
        let e_minus = Complex64::new(fm::cos(phase), -fm::sin(phase));
        let e_plus = e_minus.conj();
        let [p, sti, s, idl] = [e[0], e[1], e[2], e[3]];

        let d_s = i * self.kappa[2] * self.chi * p * sti.conj() * idl.conj() * e_minus;
        let d_i = i * self.kappa[3] * self.chi * p * sti.conj() * s.conj() * e_minus;
        if self.depleted {
            let d_sti = i * self.kappa[1] * self.chi * p * s.conj() * idl.conj() * e_minus;
            let d_p = i * self.kappa[0] * self.chi * sti * s * idl * e_plus;
            [d_p, d_sti, d_s, d_i]
        } else {
            [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), d_s, d_i]
        }
    }
}

/// Integrate the coupled wave equations from `initial.z` to the crystal
/// exit with the classical fourth-order Runge-Kutta scheme.
///
/// Errors with the blow-up position if any amplitude stops being finite.
pub fn propagate_coupled_waves(
    initial: &FieldState,
    cfg: &InteractionConfig,
    options: PropagationOptions,
) -> Result<FieldState> {
    assert!(options.steps >= 100, "at least 100 integration steps required");
    cfg.validate()?;
    if !initial.is_finite() {
        return Err(Error::NumericalOverflow { z: initial.z });
    }

    let coupling = Coupling {
        kappa: [
            cfg.modes.pump.kappa(),
            cfg.modes.stimulation.kappa(),
            cfg.modes.signal.kappa(),
            cfg.modes.idler.kappa(),
        ],
        chi: cfg.crystal.chi3_eff,
        delta_k: cfg.delta_k,
        depleted: options.depleted,
    };

    let span = cfg.crystal.length - initial.z;
    let h = span / options.steps as f64;
    let mut state = *initial;

    for step in 0..options.steps {
        let z = initial.z + step as f64 * h;
        let y = &state.amplitudes;

        let k1 = coupling.derivative(z, y);
        let k2 = coupling.derivative(z + h / 2.0, &advance(y, &k1, h / 2.0));
        let k3 = coupling.derivative(z + h / 2.0, &advance(y, &k2, h / 2.0));
        let k4 = coupling.derivative(z + h, &advance(y, &k3, h));

        for m in 0..4 {
            state.amplitudes[m] += h / 6.0 * (k1[m] + 2.0 * k2[m] + 2.0 * k3[m] + k4[m]);
        }
        state.z = initial.z + (step + 1) as f64 * h;

        if !state.is_finite() {
            return Err(Error::NumericalOverflow { z: state.z });
        }
    }
    state.z = cfg.crystal.length;
    Ok(state)
}

fn advance(y: &[Complex64; 4], k: &[Complex64; 4], h: f64) -> [Complex64; 4] {
    [
        y[0] + h * k[0],
        y[1] + h * k[1],
        y[2] + h * k[2],
        y[3] + h * k[3],
    ]
}
