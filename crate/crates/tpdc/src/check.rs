//! Internal consistency suite behind the `check` subcommand: the
//! closed-form identities and the integrator oracles, each printed as one
//! pass/fail line.

use crate::config::ResolvedConfig;
use crate::error::Result;
use tpdc_core::coincidence::{forward_coincidence_fraction, invert_coincidence_fraction};
use tpdc_core::optics::ModeRole;
use tpdc_core::propagate::{propagate_coupled_waves, FieldState, PropagationOptions};
use tpdc_core::triplet::{gain_parameter_beta, triplet_flux_full, triplet_flux_simplified};
use tpdc_core::Complex64;

struct CheckLine {
    name: &'static str,
    ok: bool,
    detail: String,
}

fn scaled_to_beta_l(rc: &ResolvedConfig, target: f64) -> tpdc_core::triplet::InteractionConfig {
    let mut cfg = rc.interaction;
    let base = gain_parameter_beta(&cfg) * cfg.crystal.length;
    let s = target / base;
    cfg.stimulation_energy *= s * s;
    cfg
}

fn closed_form_signal(cfg: &tpdc_core::triplet::InteractionConfig) -> Result<f64> {
    let state = FieldState::vacuum_seeded(cfg)?;
    let beta_l = gain_parameter_beta(cfg) * cfg.crystal.length;
    let ratio = (cfg.modes.signal.kappa() / cfg.modes.idler.kappa()).sqrt();
    let a = state.amplitude(ModeRole::Signal).re;
    let b = state.amplitude(ModeRole::Idler).im;
    Ok(a * beta_l.cosh() + ratio * b * beta_l.sinh())
}

fn integrated_signal(
    cfg: &tpdc_core::triplet::InteractionConfig,
    steps: usize,
) -> Result<f64> {
    let state = FieldState::vacuum_seeded(cfg)?;
    let out = propagate_coupled_waves(
        &state,
        cfg,
        PropagationOptions {
            depleted: false,
            steps,
        },
    )?;
    Ok(out.amplitude(ModeRole::Signal).norm())
}

fn run_all(rc: &ResolvedConfig) -> Result<Vec<CheckLine>> {
    let mut lines = Vec::new();

    // Closed-form equivalence of the general and symmetric flux formulas.
    {
        let mut worst: f64 = 0.0;
        for bl in [0.01, 0.1, 0.5, 1.0, 3.0] {
            let cfg = scaled_to_beta_l(rc, bl);
            let full = triplet_flux_full(&cfg)?.instantaneous_rate;
            let simple = triplet_flux_simplified(
                gain_parameter_beta(&cfg),
                cfg.crystal.length,
                cfg.delta_omega,
            );
            worst = worst.max((full - simple).abs() / simple);
        }
        lines.push(CheckLine {
            name: "flux closed forms agree (general vs symmetric)",
            ok: worst < 1e-12,
            detail: format!("max relative deviation {worst:.3e} (tolerance 1e-12)"),
        });
    }

    // Integrator vs closed form under the undepleted approximation.
    {
        let mut worst: f64 = 0.0;
        for bl in [0.25, 0.5, 1.0] {
            let cfg = scaled_to_beta_l(rc, bl);
            let expected = closed_form_signal(&cfg)?;
            let got = integrated_signal(&cfg, 10_000)?;
            worst = worst.max((got - expected).abs() / expected);
        }
        lines.push(CheckLine {
            name: "integrator matches cosh/sinh solution at 1e4 steps",
            ok: worst < 1e-6,
            detail: format!("max relative error {worst:.3e} (tolerance 1e-6)"),
        });
    }

    // Fourth-order convergence on step halving.
    {
        let cfg = scaled_to_beta_l(rc, 1.0);
        let expected = closed_form_signal(&cfg)?;
        let err = |steps| -> Result<f64> {
            Ok((integrated_signal(&cfg, steps)? - expected).abs() / expected)
        };
        let ratio = err(100)? / err(200)?;
        lines.push(CheckLine {
            name: "integrator error drops 16x on step halving",
            ok: (14.0..=18.0).contains(&ratio),
            detail: format!("ratio {ratio:.2} (expected 16 +/- 2)"),
        });
    }

    // Manley-Rowe photon-flux balance, depleted mode.
    {
        let cfg = rc.interaction;
        let pump = cfg.pump_field();
        let initial = FieldState::at_entrance([
            Complex64::new(pump, 0.0),
            Complex64::new(cfg.gamma() * cfg.stimulation_field(), 0.0),
            Complex64::new(0.05 * pump, 0.0),
            Complex64::new(0.0, 0.05 * pump),
        ]);
        let out = propagate_coupled_waves(
            &initial,
            &cfg,
            PropagationOptions {
                depleted: true,
                steps: 10_000,
            },
        )?;
        let delta = |role| -> f64 {
            out.photon_flux_proxy(role, &cfg) - initial.photon_flux_proxy(role, &cfg)
        };
        let ds = delta(ModeRole::Signal);
        let worst = [
            (delta(ModeRole::Idler) - ds).abs(),
            (delta(ModeRole::Stimulation) - ds).abs(),
            (-delta(ModeRole::Pump) - ds).abs(),
        ]
        .into_iter()
        .fold(0.0f64, f64::max)
            / ds;
        lines.push(CheckLine {
            name: "Manley-Rowe balance in depleted mode",
            ok: worst < 1e-8,
            detail: format!("max relative imbalance {worst:.3e} (tolerance 1e-8)"),
        });
    }

    // Undepleted-pump validity at the configured energies.
    {
        let cfg = rc.interaction;
        let initial = FieldState::vacuum_seeded(&cfg)?;
        let out = propagate_coupled_waves(
            &initial,
            &cfg,
            PropagationOptions {
                depleted: true,
                steps: 10_000,
            },
        )?;
        let rel = (out.amplitude(ModeRole::Pump).norm()
            - initial.amplitude(ModeRole::Pump).norm())
        .abs()
            / initial.amplitude(ModeRole::Pump).norm();
        lines.push(CheckLine {
            name: "pump depletion negligible at configured energies",
            ok: rel < 1e-3,
            detail: format!("relative pump change {rel:.3e} (tolerance 1e-3)"),
        });
    }

    // Coincidence inversion is the inverse of the forward fraction.
    {
        let mut worst: f64 = 0.0;
        for n in [0.01, 0.219, 0.5, 1.157, 5.0, 10.0] {
            for tf in [0.02, 0.11, 0.2] {
                let eta = forward_coincidence_fraction(n, tf);
                let back = invert_coincidence_fraction(eta, tf)?;
                worst = worst.max((back - n).abs() / n);
            }
        }
        lines.push(CheckLine {
            name: "coincidence inversion round-trips the forward model",
            ok: worst < 1e-10,
            detail: format!("max relative deviation {worst:.3e} (tolerance 1e-10)"),
        });
    }

    Ok(lines)
}

/// Run the suite, print one line per check, and return whether all passed.
pub fn run_checks(rc: &ResolvedConfig) -> Result<bool> {
    let lines = run_all(rc)?;
    let mut all_ok = true;
    for line in &lines {
        println!(
            "[{}] {} - {}",
            if line.ok { "PASS" } else { "FAIL" },
            line.name,
            line.detail
        );
        all_ok &= line.ok;
    }
    Ok(all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::ConfigFile;

    #[test]
    fn all_checks_pass_on_the_default_config() {
        let rc = ConfigFile::default().resolve().unwrap();
        let lines = run_all(&rc).unwrap();
        assert_eq!(lines.len(), 6);
        for line in &lines {
            assert!(line.ok, "{} failed: {}", line.name, line.detail);
        }
    }
}
