//! Coincidence statistics of the two-detector protocol: forward Monte
//! Carlo simulation and the analytic inversion of the measured coincidence
//! fraction into triplets per pulse.
//!
//! In the protocol, the two photons of the unseeded pair are
//! deterministically split onto two single-photon detectors. Each photon
//! independently survives the collection chain with probability `T_F`
//! (the transfer function), a detector registers at most one click per
//! pulse, and a coincidence is a pulse where both detectors click. Under
//! Poisson triplet statistics the expected coincidence fraction is
//! η = (1 − e^{−N·T_F})², whose inversion N = −ln(1 − √η̂)/T_F recovers
//! the triplets per pulse at the crystal exit.

use crate::error::{Error, Result};
use crate::fm;
use crate::rng::PulseRng;

/// Triplet-number statistics per pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PhotonStatistics {
    /// Poisson counts; the inversion formula is exact for this case.
    #[default]
    Poisson,
    /// Thermal (Bose-Einstein) counts, for sensitivity checks: parametric
    /// gain can bunch the generated photons.
    Thermal,
}

/// Detection chain parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionSetup {
    /// End-to-end transfer function per photon, in (0, 1].
    pub transfer_function: f64,
    /// Pulse repetition rate (Hz).
    pub rep_rate: f64,
    /// Coincidence time window (s).
    pub coincidence_window: f64,
    /// Accidental-coincidence rate measured with that window (s⁻¹).
    pub dark_coincidence_rate: f64,
    /// Photon-number statistics of the triplet count.
    pub photon_number_statistics: PhotonStatistics,
}

impl DetectionSetup {
    /// Validated constructor.
    pub fn new(
        transfer_function: f64,
        rep_rate: f64,
        coincidence_window: f64,
        dark_coincidence_rate: f64,
        photon_number_statistics: PhotonStatistics,
    ) -> Result<Self> {
        if !(transfer_function > 0.0 && transfer_function <= 1.0) {
            return Err(Error::Domain {
                what: "transfer function must lie in (0, 1]",
                value: transfer_function,
            });
        }
        if !(rep_rate > 0.0) {
            return Err(Error::Domain {
                what: "repetition rate must be positive",
                value: rep_rate,
            });
        }
        if !(coincidence_window > 0.0) {
            return Err(Error::Domain {
                what: "coincidence window must be positive",
                value: coincidence_window,
            });
        }
        if !(dark_coincidence_rate >= 0.0) {
            return Err(Error::Domain {
                what: "dark coincidence rate must be >= 0",
                value: dark_coincidence_rate,
            });
        }
        Ok(DetectionSetup {
            transfer_function,
            rep_rate,
            coincidence_window,
            dark_coincidence_rate,
            photon_number_statistics,
        })
    }

    /// Probability of an accidental coincidence in one pulse period:
    /// the accidental rate spread over the 1/rep_rate pulse spacing.
    pub fn dark_probability_per_pulse(&self) -> f64 {
        (self.dark_coincidence_rate / self.rep_rate).min(1.0)
    }
}

/// Outcome of one seeded Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoincidenceResult {
    /// Number of simulated pulses.
    pub pulses: u64,
    /// Number of coincidence events.
    pub coincidences: u64,
    /// Raw coincidence fraction, coincidences / pulses.
    pub eta_hat: f64,
    /// 95% Wilson score interval for the coincidence fraction.
    pub eta_ci: (f64, f64),
    /// Seed the run was keyed with.
    pub rng_seed: u64,
}

/// Invert a measured coincidence fraction into triplets per pulse:
/// N = −ln(1 − √η̂) / T_F.
pub fn invert_coincidence_fraction(eta_hat: f64, transfer_function: f64) -> Result<f64> {
    if !(eta_hat >= 0.0) {
        return Err(Error::Domain {
            what: "coincidence fraction must be >= 0",
            value: eta_hat,
        });
    }
    if eta_hat >= 1.0 {
        return Err(Error::Domain {
            what: "coincidence fraction must be < 1 to invert",
            value: eta_hat,
        });
    }
    if !(transfer_function > 0.0 && transfer_function <= 1.0) {
        return Err(Error::Domain {
            what: "transfer function must lie in (0, 1]",
            value: transfer_function,
        });
    }
    Ok(-fm::ln_1p(-fm::sqrt(eta_hat)) / transfer_function)
}

/// Expected coincidence fraction of `n_per_pulse` Poisson triplets:
/// η = (1 − e^{−N·T_F})².
pub fn forward_coincidence_fraction(n_per_pulse: f64, transfer_function: f64) -> f64 {
    assert!(n_per_pulse >= 0.0, "triplets per pulse must be >= 0");
    let arm = -fm::exp_m1(-n_per_pulse * transfer_function);
    arm * arm
}

/// Wilson score interval for `successes` out of `trials` at confidence
/// level z (two-sided).
fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * fm::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    ((center - half).max(0.0), (center + half).min(1.0))
}

// Per-pulse stream lanes.
const LANE_SIGNAL: u64 = 0;
const LANE_IDLER: u64 = 1;
const LANE_DARK: u64 = 2;

/// Coincidences observed over the pulse index range `[start, end)`.
///
/// Each pulse uses its own counter-based streams, so partitioning a run
/// into ranges and summing the counts reproduces the unpartitioned result
/// exactly, in any order.
///
/// Each detector arm is populated independently: per pulse, the arm draws
/// a photon count with mean `n_mean` from the configured statistics, each
/// photon reaches its detector with probability `T_F`, and the detector
/// registers at most one click (its recovery time exceeds the pulse).
/// Independent arm populations are the construction for which the
/// inversion formula [`invert_coincidence_fraction`] is exact under
/// Poisson statistics: each arm clicks with probability 1 − e^{−N·T_F}
/// and the coincidence fraction is the product of the two. (A model that
/// routed the two photons of the same triplet onto the two arms would
/// instead produce single-triplet coincidences at first order in N·T_F²,
/// which the inversion formula does not describe.)
pub fn count_coincidences_in_range(
    n_mean: f64,
    setup: &DetectionSetup,
    start: u64,
    end: u64,
    seed: u64,
) -> u64 {
    assert!(n_mean >= 0.0, "mean triplets per pulse must be >= 0");
    let t_f = setup.transfer_function;
    let dark_p = setup.dark_probability_per_pulse();
    let arm_clicks = |rng: &mut PulseRng| {
        let photons = match setup.photon_number_statistics {
            PhotonStatistics::Poisson => rng.poisson(n_mean),
            PhotonStatistics::Thermal => rng.thermal(n_mean),
        };
        let mut click = false;
        for _ in 0..photons {
            click |= rng.bernoulli(t_f);
        }
        click
    };
    let mut coincidences = 0u64;
    for pulse in start..end {
        let signal_click = arm_clicks(&mut PulseRng::lane(seed, pulse, LANE_SIGNAL));
        let idler_click = arm_clicks(&mut PulseRng::lane(seed, pulse, LANE_IDLER));
        let mut coincidence = signal_click && idler_click;
        if dark_p > 0.0 {
            coincidence |= PulseRng::lane(seed, pulse, LANE_DARK).bernoulli(dark_p);
        }
        if coincidence {
            coincidences += 1;
        }
    }
    coincidences
}

/// Simulate `n_pulses` pulses of the coincidence protocol with `n_mean`
/// triplets per pulse on average.
pub fn simulate_pulses(
    n_mean: f64,
    setup: &DetectionSetup,
    n_pulses: u64,
    seed: u64,
) -> CoincidenceResult {
    assert!(n_pulses >= 1, "at least one pulse required");
    let coincidences = count_coincidences_in_range(n_mean, setup, 0, n_pulses, seed);
    CoincidenceResult {
        pulses: n_pulses,
        coincidences,
        eta_hat: coincidences as f64 / n_pulses as f64,
        eta_ci: wilson_interval(coincidences, n_pulses, 1.959_963_984_540_054),
        rng_seed: seed,
    }
}

/// Simulate, then invert the observed fraction: an end-to-end check that
/// the inversion formula recovers what the Monte Carlo generated.
pub fn estimator_roundtrip(
    n_true: f64,
    setup: &DetectionSetup,
    n_pulses: u64,
    seed: u64,
) -> Result<f64> {
    let result = simulate_pulses(n_true, setup, n_pulses, seed);
    invert_coincidence_fraction(result.eta_hat, setup.transfer_function)
}

/// Result of the single-triplet criterion check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriterionCheck {
    /// True iff strictly fewer than one triplet per pulse.
    pub satisfied: bool,
    /// Distance to the criterion boundary, 1 − n (negative when violated).
    pub margin: f64,
}

/// Check the true-coincidence criterion n < 1 triplet/pulse. Above one
/// triplet per pulse, photons from different triplets start producing
/// spurious coincidences.
pub fn check_single_triplet_criterion(n_per_pulse: f64) -> CriterionCheck {
    assert!(n_per_pulse >= 0.0, "triplets per pulse must be >= 0");
    CriterionCheck {
        satisfied: n_per_pulse < 1.0,
        margin: 1.0 - n_per_pulse,
    }
}

/// Search range for the transfer-function fit: the measured efficiency
/// range of the detection chain.
pub const TF_SEARCH_RANGE: (f64, f64) = (0.02, 0.20);

/// One point of the transfer-function fit: a model-predicted triplets per
/// pulse and the measured coincidence fraction with its deviation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitPoint {
    /// Model-predicted triplets per pulse (must be positive).
    pub predicted_n: f64,
    /// Measured coincidence fraction.
    pub eta_hat: f64,
    /// Standard deviation of the measured fraction (0 = exact point).
    pub sigma: f64,
}

/// Transfer-function fit outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferFunctionFit {
    /// Argmin of the weighted least squares over the search range.
    pub t_f: f64,
    /// 1-σ interval from the χ² curvature, clamped to the search range;
    /// one-sided (an endpoint equals `t_f`) when the argmin sits on a
    /// range boundary.
    pub interval: (f64, f64),
}

/// Weighted least-squares fit of the transfer function to measured
/// coincidence fractions, by bounded scalar search over
/// [`TF_SEARCH_RANGE`].
pub fn fit_transfer_function(data: &[FitPoint]) -> Result<TransferFunctionFit> {
    if data.is_empty() {
        return Err(Error::Domain {
            what: "transfer-function fit needs at least one data point",
            value: 0.0,
        });
    }
    for p in data {
        if !(p.predicted_n > 0.0) {
            return Err(Error::Domain {
                what: "predicted triplets per pulse must be positive",
                value: p.predicted_n,
            });
        }
        if !(p.eta_hat >= 0.0 && p.eta_hat < 1.0) {
            return Err(Error::Domain {
                what: "measured coincidence fraction must lie in [0, 1)",
                value: p.eta_hat,
            });
        }
        if !(p.sigma >= 0.0) {
            return Err(Error::Domain {
                what: "measurement deviation must be >= 0",
                value: p.sigma,
            });
        }
    }
    let (lo, hi) = TF_SEARCH_RANGE;

    // Exact (sigma = 0) points pin the answer analytically; they must
    // agree with each other or no fit exists.
    let mut pinned: Option<f64> = None;
    for p in data.iter().filter(|p| p.sigma == 0.0) {
        let t = invert_coincidence_fraction(p.eta_hat, 1.0)? / p.predicted_n;
        match pinned {
            None => pinned = Some(t),
            Some(prev) => {
                if (t - prev).abs() > 1e-9 * prev.abs().max(1e-12) {
                    return Err(Error::NoFit {
                        what: "exact (sigma = 0) points are mutually inconsistent",
                    });
                }
            }
        }
    }
    if let Some(t) = pinned {
        let t_f = t.clamp(lo, hi);
        return Ok(TransferFunctionFit {
            t_f,
            interval: (t_f, t_f),
        });
    }

    let chi2 = |t: f64| -> f64 {
        data.iter()
            .map(|p| {
                let r = (p.eta_hat - forward_coincidence_fraction(p.predicted_n, t)) / p.sigma;
                r * r
            })
            .sum()
    };

    // Golden-section search; the objective is smooth and effectively
    // unimodal over the narrow physical range.
    let inv_phi = 0.618_033_988_749_894_9_f64;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (chi2(c), chi2(d));
    while b - a > 1e-12 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = chi2(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = chi2(d);
        }
    }
    let mut t_best = 0.5 * (a + b);
    // The bracket converges into the interior; snap to a boundary when the
    // objective keeps decreasing towards it.
    if chi2(lo) <= chi2(t_best) {
        t_best = lo;
    }
    if chi2(hi) < chi2(t_best) {
        t_best = hi;
    }

    // 1-sigma interval from the curvature of chi^2 (delta chi^2 = 1).
    let h = 1e-5;
    let tc = t_best.clamp(lo + h, hi - h);
    let curvature = (chi2(tc + h) - 2.0 * chi2(tc) + chi2(tc - h)) / (h * h);
    let sigma_t = if curvature > 0.0 {
        fm::sqrt(2.0 / curvature)
    } else {
        hi - lo
    };
    let interval = ((t_best - sigma_t).max(lo), (t_best + sigma_t).min(hi));
    Ok(TransferFunctionFit {
        t_f: t_best,
        interval,
    })
}
