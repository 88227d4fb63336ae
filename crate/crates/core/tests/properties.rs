//! Property tests for the scaling laws and inverse pairs of the model.

use proptest::prelude::*;
use tpdc_core::coincidence::{
    count_coincidences_in_range, forward_coincidence_fraction, invert_coincidence_fraction,
    simulate_pulses, DetectionSetup, PhotonStatistics,
};
use tpdc_core::optics::{
    energy_to_field, field_to_energy, overlap_factor, phase_mismatch, vacuum_field_amplitude,
    BeamGeometry, ModeRole, OpticalMode, PolarizationAxis,
};

fn mode(lambda: f64, n: f64, width: f64) -> OpticalMode {
    OpticalMode::new(ModeRole::Signal, lambda, n, PolarizationAxis::Y, width).unwrap()
}

proptest! {
    // Energy <-> field are exact inverses over the working energy range.
    #[test]
    fn energy_field_roundtrip(
        energy in 1e-12f64..1e-3,
        waist in 10e-6f64..200e-6,
        tau in 1e-12f64..100e-12,
        n in 1.0f64..3.0,
    ) {
        let geom = BeamGeometry::new(waist, tau, 10.0).unwrap();
        let field = energy_to_field(energy, &geom, n);
        let back = field_to_energy(field, &geom, n);
        prop_assert!((back - energy).abs() / energy < 1e-12);
    }

    // kappa(lambda, n) = kappa(lambda/2, n) / 2.
    #[test]
    fn kappa_is_homogeneous(lambda in 100e-9f64..10e-6, n in 1.0f64..3.0) {
        let full = mode(lambda, n, 1e12).kappa();
        let half = mode(lambda / 2.0, n, 1e12).kappa();
        prop_assert!((full - half / 2.0).abs() / full < 1e-12);
    }

    // Vacuum amplitude scaling: sqrt in delta_omega, inverse sqrt in n and S.
    #[test]
    fn vacuum_amplitude_scalings(
        lambda in 500e-9f64..3e-6,
        n in 1.0f64..3.0,
        width in 1e10f64..1e13,
        s in 1e-10f64..1e-7,
    ) {
        let base = vacuum_field_amplitude(&mode(lambda, n, width), s).unwrap();

        let w4 = vacuum_field_amplitude(&mode(lambda, n, 4.0 * width), s).unwrap();
        prop_assert!((w4 - 2.0 * base).abs() / base < 1e-9);

        let s4 = vacuum_field_amplitude(&mode(lambda, n, width), 4.0 * s).unwrap();
        prop_assert!((s4 - base / 2.0).abs() / base < 1e-9);

        // omega scaling: halving lambda doubles omega, amplitude gains sqrt(2).
        let l2 = vacuum_field_amplitude(&mode(lambda / 2.0, n, width), s).unwrap();
        prop_assert!((l2 - base * 2f64.sqrt()).abs() / base < 1e-9);

        let n2 = vacuum_field_amplitude(&mode(lambda, 2.0 * n, width), s).unwrap();
        prop_assert!((n2 - base / 2f64.sqrt()).abs() / base < 1e-9);
    }

    // Overlap grows with the pump waist and stays within (0, 1 - e^-2]
    // while the pump is no wider than the stimulation.
    #[test]
    fn overlap_monotone_and_bounded(
        w_sti in 20e-6f64..200e-6,
        f1 in 0.05f64..1.0,
        f2 in 0.05f64..1.0,
    ) {
        let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
        let g_lo = overlap_factor(lo * w_sti, w_sti);
        let g_hi = overlap_factor(hi * w_sti, w_sti);
        prop_assert!(g_lo > 0.0);
        prop_assert!(g_hi <= 1.0 - (-2.0f64).exp() + 1e-15);
        if hi > lo {
            prop_assert!(g_hi > g_lo);
        }
    }

    // The phase-matching residual is linear in each refractive index.
    #[test]
    fn phase_mismatch_is_linear_in_each_index(
        d in 1e-6f64..1e-2,
        which in 0usize..4,
    ) {
        let build = |indices: [f64; 4]| {
            phase_mismatch([
                OpticalMode::new(ModeRole::Pump, 532e-9, indices[0], PolarizationAxis::Y, 1e12).unwrap(),
                OpticalMode::new(ModeRole::Stimulation, 1491e-9, indices[1], PolarizationAxis::Z, 1e12).unwrap(),
                OpticalMode::new(ModeRole::Signal, 1654e-9, indices[2], PolarizationAxis::Y, 1e12).unwrap(),
                OpticalMode::new(ModeRole::Idler, 1654e-9, indices[3], PolarizationAxis::Z, 1e12).unwrap(),
            ]).unwrap()
        };
        let base = [1.79, 1.82, 1.732, 1.813];
        let mut up = base;
        up[which] += d;
        let mut up2 = base;
        up2[which] += 2.0 * d;
        let f0 = build(base);
        let f1 = build(up);
        let f2 = build(up2);
        // Equal increments produce equal mismatch steps.
        let step1 = f1 - f0;
        let step2 = f2 - f1;
        prop_assert!((step2 - step1).abs() <= 1e-9 * step1.abs().max(1e-12));
    }

    // invert . forward = identity over the stated ranges.
    #[test]
    fn coincidence_inversion_identity(n in 0.0f64..10.0, t_f in 0.01f64..1.0) {
        let eta = forward_coincidence_fraction(n, t_f);
        prop_assume!(eta < 1.0);
        let back = invert_coincidence_fraction(eta, t_f).unwrap();
        if n > 1e-12 {
            prop_assert!((back - n).abs() / n < 1e-10, "n = {n}, back = {back}");
        } else {
            prop_assert!(back.abs() < 1e-10);
        }
    }

    // eta never exceeds 1 and is pathwise monotone in the mean under
    // paired seeds (dark-free), for both statistics.
    #[test]
    fn simulated_eta_saturates_and_is_monotone(
        n_lo in 0.0f64..2.0,
        bump in 0.1f64..3.0,
        seed in any::<u64>(),
        thermal in any::<bool>(),
    ) {
        let stats = if thermal { PhotonStatistics::Thermal } else { PhotonStatistics::Poisson };
        let setup = DetectionSetup::new(0.11, 10.0, 100e-12, 0.0, stats).unwrap();
        let pulses = 4_000;
        let lo = count_coincidences_in_range(n_lo, &setup, 0, pulses, seed);
        let hi = count_coincidences_in_range(n_lo + bump, &setup, 0, pulses, seed);
        prop_assert!(hi >= lo);
        prop_assert!(hi <= pulses);
    }

    // Partition invariance: splitting the pulse range anywhere composes.
    #[test]
    fn simulation_is_partition_invariant(
        seed in any::<u64>(),
        cut in 1u64..9_999,
    ) {
        let setup = DetectionSetup::new(0.11, 10.0, 100e-12, 1e-7, PhotonStatistics::Poisson).unwrap();
        let total = count_coincidences_in_range(0.8, &setup, 0, 10_000, seed);
        let a = count_coincidences_in_range(0.8, &setup, 0, cut, seed);
        let b = count_coincidences_in_range(0.8, &setup, cut, 10_000, seed);
        prop_assert_eq!(total, a + b);
    }
}

/// Monte Carlo convergence: the observed fraction sits within four
/// binomial standard errors of the analytic expectation for (at least)
/// 99 of 100 seeds.
#[test]
fn monte_carlo_converges_to_the_forward_fraction() {
    let setup = DetectionSetup::new(0.11, 10.0, 100e-12, 0.0, PhotonStatistics::Poisson).unwrap();
    let n_mean = 0.5;
    let pulses = 30_000u64;
    let expected = forward_coincidence_fraction(n_mean, setup.transfer_function);
    let sigma = (expected * (1.0 - expected) / pulses as f64).sqrt();
    let mut ok = 0;
    for seed in 0..100u64 {
        let r = simulate_pulses(n_mean, &setup, pulses, seed);
        if (r.eta_hat - expected).abs() < 4.0 * sigma {
            ok += 1;
        }
    }
    assert!(ok >= 99, "only {ok}/100 seeds within 4 sigma");
}
