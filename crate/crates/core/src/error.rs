//! Error type shared by the model and statistics routines.

use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors produced by the model and statistics routines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// An input lies outside the mathematical domain of the operation.
    Domain {
        /// What the offending quantity is and what was required of it.
        what: &'static str,
        /// The value that was rejected.
        value: f64,
    },
    /// A structurally invalid configuration (e.g. a role appearing twice
    /// in a mode set).
    Config {
        /// Description of the structural problem.
        what: &'static str,
    },
    /// The closed-form flux only holds for collinear phase matching.
    PhaseMismatched {
        /// The nonzero wavevector mismatch (m⁻¹).
        delta_k: f64,
    },
    /// The coupled-wave integration produced a non-finite amplitude.
    NumericalOverflow {
        /// Position inside the crystal (m) where the amplitudes blew up.
        z: f64,
    },
    /// A parameter fit could not be carried out on the supplied data.
    NoFit {
        /// Why the fit is impossible.
        what: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => write!(f, "domain error: {what} (got {value:e})"),
            Error::Config { what } => write!(f, "configuration error: {what}"),
            Error::PhaseMismatched { delta_k } => write!(
                f,
                "closed-form flux requires delta_k = 0, got {delta_k:e} m^-1; \
                 use propagate_coupled_waves for phase-mismatched propagation"
            ),
            Error::NumericalOverflow { z } => {
                write!(f, "coupled-wave amplitudes became non-finite at z = {z:e} m")
            }
            Error::NoFit { what } => write!(f, "no fit possible: {what}"),
        }
    }
}

impl core::error::Error for Error {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_names_the_offender() {
        let e = Error::Domain {
            what: "cross_section must be positive",
            value: 0.0,
        };
        let s = format!("{e}");
        assert!(s.contains("cross_section"));

        let e = Error::PhaseMismatched { delta_k: 10.0 };
        assert!(format!("{e}").contains("propagate_coupled_waves"));
    }
}
