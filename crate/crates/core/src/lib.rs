//! Semiclassical model of stimulated third-order parametric down-conversion
//! (photon-triplet generation) and the coincidence statistics used to
//! measure it.
//!
//! The crate covers three layers:
//!
//! * [`optics`] — per-wave quantities: angular frequencies, coupling
//!   factors, Gaussian-pulse energy/field conversion, the vacuum-seed
//!   amplitude assigned to the unseeded modes, beam overlap, and the
//!   collinear phase-matching residual.
//! * [`triplet`] and [`propagate`] — the parametric gain `β`, the
//!   closed-form vacuum-seeded triplet flux, and a fixed-step fourth-order
//!   integrator for the four coupled wave equations that the closed form
//!   linearizes.
//! * [`coincidence`] — forward Monte Carlo simulation of a two-detector
//!   coincidence protocol, the inversion of measured coincidence fractions
//!   into triplets per pulse, and a bounded least-squares fit of the
//!   detection transfer function.
//!
//! Everything is pure `f64` computation with no allocation or IO, so the
//! crate builds for `no_std` targets. All randomness flows through
//! counter-based per-pulse streams ([`rng::PulseRng`]), making Monte Carlo
//! results independent of iteration order and thread count.

#![cfg_attr(not(test), no_std)]
// Validation uses `!(v > 0.0)` so that NaN fails the check; `v <= 0.0`
// would accept NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coincidence;
pub mod constants;
pub mod error;
pub mod optics;
pub mod propagate;
pub mod reference;
pub mod rng;
pub mod triplet;

pub use num_complex::Complex64;

pub use coincidence::{
    check_single_triplet_criterion, estimator_roundtrip, fit_transfer_function,
    forward_coincidence_fraction, invert_coincidence_fraction, simulate_pulses, CoincidenceResult,
    CriterionCheck, DetectionSetup, FitPoint, PhotonStatistics, TransferFunctionFit,
};
pub use constants::PhysicalConstants;
pub use error::{Error, Result};
pub use optics::{
    energy_to_field, field_to_energy, overlap_factor, photons_per_second, spectral_width_to_rad,
    vacuum_field_amplitude, Axis, BeamGeometry, CrystalConfig, ModeRole, ModeSet, OpticalMode,
    PolarizationAxis,
};
pub use propagate::{propagate_coupled_waves, FieldState, PropagationOptions};
pub use triplet::{
    gain_parameter_beta, psi_factor, quantum_efficiency, triplet_flux_full,
    triplet_flux_simplified, triplets_per_pulse, BetaConvention, FluxResult, InteractionConfig,
    TauEffPolicy,
};

/// Internal float math, routed through `libm` so results are identical on
/// `std` and `no_std` builds.
pub(crate) mod fm {
    #[inline]
    pub fn sqrt(x: f64) -> f64 {
        libm::sqrt(x)
    }
    #[inline]
    pub fn exp(x: f64) -> f64 {
        libm::exp(x)
    }
    #[inline]
    pub fn exp_m1(x: f64) -> f64 {
        libm::expm1(x)
    }
    #[inline]
    pub fn ln(x: f64) -> f64 {
        libm::log(x)
    }
    #[inline]
    pub fn ln_1p(x: f64) -> f64 {
        libm::log1p(x)
    }
    #[inline]
    pub fn cosh(x: f64) -> f64 {
        libm::cosh(x)
    }
    #[inline]
    pub fn sinh(x: f64) -> f64 {
        libm::sinh(x)
    }
    #[inline]
    pub fn cos(x: f64) -> f64 {
        libm::cos(x)
    }
    #[inline]
    pub fn sin(x: f64) -> f64 {
        libm::sin(x)
    }
    #[inline]
    pub fn floor(x: f64) -> f64 {
        libm::floor(x)
    }
}
