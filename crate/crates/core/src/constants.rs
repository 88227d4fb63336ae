//! Physical constants in SI units (CODATA 2018).

/// Speed of light in vacuum (m/s). Exact by SI definition.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Vacuum permittivity ε₀ (F/m).
pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;

/// Reduced Planck constant ħ (J·s). Exact by SI definition.
pub const REDUCED_PLANCK: f64 = 1.054_571_817e-34;

/// The constants entering the field and flux formulas, frozen as one value.
///
/// Immutable by construction: the only way to obtain one is the CODATA 2018
/// set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light (m/s).
    pub c: f64,
    /// Vacuum permittivity (F/m).
    pub eps0: f64,
    /// Reduced Planck constant (J·s).
    pub hbar: f64,
}

impl PhysicalConstants {
    /// CODATA 2018 recommended values.
    pub const CODATA_2018: Self = Self {
        c: SPEED_OF_LIGHT,
        eps0: VACUUM_PERMITTIVITY,
        hbar: REDUCED_PLANCK,
    };
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA_2018
    }
}
