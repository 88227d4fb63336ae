//! Counter-based random streams for reproducible, order-independent
//! Monte Carlo.
//!
//! Each pulse gets its own stream, keyed by `(seed, pulse_index)` through
//! the SplitMix64 finalizer. Streams never depend on how many draws earlier
//! pulses consumed, so a simulation partitioned across workers produces
//! bit-identical results in any execution order.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: a bijective avalanche mix of the input word.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A per-pulse random stream.
///
/// The stream is SplitMix64 whose initial state is derived from the
/// `(seed, pulse_index)` pair, so any pulse's draws can be reproduced in
/// isolation. Independent lanes of the same pulse (e.g. one per detector
/// arm) are available through [`PulseRng::lane`].
#[derive(Debug, Clone)]
pub struct PulseRng {
    state: u64,
}

impl PulseRng {
    /// Stream for one pulse of one seeded run (lane 0).
    pub fn new(seed: u64, pulse_index: u64) -> Self {
        Self::lane(seed, pulse_index, 0)
    }

    /// One of several mutually independent streams attached to the same
    /// pulse. Lanes keep draws for separate purposes (detector arms, dark
    /// counts) at fixed positions, independent of how many draws the
    /// other lanes consume.
    pub fn lane(seed: u64, pulse_index: u64, lane: u64) -> Self {
        let state = mix(seed)
            ^ mix(pulse_index.wrapping_mul(GOLDEN_GAMMA).wrapping_add(1))
            ^ mix((lane.wrapping_add(2)).wrapping_mul(0xD605_BBB5_8C8A_BC2D));
        PulseRng { state }
    }

    /// Next raw 64-bit word.
    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform draw in `[0, 1)` with 53-bit resolution.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Bernoulli draw with success probability `p`.
    #[inline]
    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }

    /// Poisson draw by inverse-CDF scan.
    ///
    /// Exact for any mean that keeps `exp(-mean)` representable
    /// (mean ≲ 700); cost is O(mean) which is trivial at the photon
    /// numbers of interest. A single uniform is consumed, so the draw is
    /// pathwise monotone in `mean` — raising the mean on a fixed stream
    /// never lowers the count.
    pub fn poisson(&mut self, mean: f64) -> u64 {
        assert!(mean >= 0.0 && mean.is_finite(), "poisson mean must be finite and >= 0");
        if mean == 0.0 {
            return 0;
        }
        let u = self.uniform();
        let mut k: u64 = 0;
        let mut pmf = crate::fm::exp(-mean);
        let mut cdf = pmf;
        while u >= cdf {
            k += 1;
            pmf *= mean / k as f64;
            cdf += pmf;
            // Beyond the representable tail the CDF stops moving; the
            // remaining probability mass is below 1 ulp.
            if pmf == 0.0 {
                break;
            }
        }
        k
    }

    /// Thermal (Bose-Einstein) photon-number draw with the given mean,
    /// i.e. geometric on {0, 1, 2, ...} with q = mean / (1 + mean).
    ///
    /// Single-uniform inversion, pathwise monotone in `mean`.
    pub fn thermal(&mut self, mean: f64) -> u64 {
        assert!(mean >= 0.0 && mean.is_finite(), "thermal mean must be finite and >= 0");
        if mean == 0.0 {
            return 0;
        }
        let q = mean / (1.0 + mean);
        // u in (0, 1]: excludes ln(0).
        let u = 1.0 - self.uniform();
        let k = crate::fm::floor(crate::fm::ln(u) / crate::fm::ln(q));
        k as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_deterministic_and_isolated() {
        let a: Vec<u64> = (0..8).map(|i| PulseRng::new(42, i).next_u64()).collect();
        let b: Vec<u64> = (0..8).map(|i| PulseRng::new(42, i).next_u64()).collect();
        assert_eq!(a, b);

        let c: Vec<u64> = (0..8).map(|i| PulseRng::new(43, i).next_u64()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn uniform_is_in_unit_interval_with_sane_mean() {
        let mut rng = PulseRng::new(7, 0);
        let n = 100_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let u = rng.uniform();
            assert!((0.0..1.0).contains(&u));
            sum += u;
        }
        let mean = sum / n as f64;
        assert!((mean - 0.5).abs() < 0.005, "mean = {mean}");
    }

    #[test]
    fn poisson_moments_match() {
        let mut rng = PulseRng::new(11, 3);
        let lambda = 0.7;
        let n = 200_000;
        let mut sum = 0u64;
        let mut sq = 0u64;
        for _ in 0..n {
            let k = rng.poisson(lambda);
            sum += k;
            sq += k * k;
        }
        let mean = sum as f64 / n as f64;
        let var = sq as f64 / n as f64 - mean * mean;
        // Mean and variance both equal lambda; 5 sigma tolerances.
        assert!((mean - lambda).abs() < 5.0 * (lambda / n as f64).sqrt(), "mean = {mean}");
        assert!((var - lambda).abs() < 0.02, "var = {var}");
    }

    #[test]
    fn poisson_zero_mean_is_zero() {
        let mut rng = PulseRng::new(1, 1);
        assert_eq!(rng.poisson(0.0), 0);
    }

    #[test]
    fn poisson_is_pathwise_monotone_in_mean() {
        for pulse in 0..2_000 {
            let k_lo = PulseRng::new(5, pulse).poisson(0.4);
            let k_hi = PulseRng::new(5, pulse).poisson(1.9);
            assert!(k_hi >= k_lo);
        }
    }

    #[test]
    fn thermal_moments_match() {
        let mut rng = PulseRng::new(23, 0);
        let nbar = 0.5;
        let n = 200_000;
        let mut sum = 0u64;
        let mut sq = 0u64;
        for _ in 0..n {
            let k = rng.thermal(nbar);
            sum += k;
            sq += k * k;
        }
        let mean = sum as f64 / n as f64;
        let var = sq as f64 / n as f64 - mean * mean;
        // Geometric: mean nbar, variance nbar(1 + nbar).
        assert!((mean - nbar).abs() < 0.01, "mean = {mean}");
        assert!((var - nbar * (1.0 + nbar)).abs() < 0.03, "var = {var}");
    }
}
