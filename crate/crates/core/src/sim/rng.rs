use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

/// Identifies a generator stream; trials index into it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RngConfig {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngConfig {
    pub fn new(master_seed: u64, stream_id: u64) -> Self {
        RngConfig { master_seed, stream_id }
    }

    /// Generator for one trial: a pure function of seed, stream and trial.
    /// Each trial owns a block of `2^32` words of the stream.
    pub fn trial_rng(&self, trial: u64) -> TrialRng {
        let mut r = ChaCha8Rng::seed_from_u64(self.master_seed);
        r.set_stream(self.stream_id);
        r.set_word_pos(u128::from(trial) << 32);
        TrialRng(r)
    }
}

#[derive(Debug, Clone)]
pub struct TrialRng(ChaCha8Rng);

impl TrialRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// 53-bit mantissa; `(m + 1/2)/2^53`, so never 0 or 1.
    pub fn uniform_bits(&mut self) -> u64 {
        self.next_u64() >> 11
    }

    /// Uniform on the open interval `(0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        (self.uniform_bits() as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
    }

    /// beta(1, θ) by inversion: `1 − U^{1/θ}`.
    pub fn beta_one(&mut self, theta: f64) -> f64 {
        let u = self.uniform();
        if theta == 1.0 {
            u
        } else {
            -libm::expm1(libm::log(u) / theta)
        }
    }

    /// `(W, 1 − W)` for `W ~ beta(1, θ)`, with the complement kept to full
    /// relative precision.
    pub fn beta_one_split(&mut self, theta: f64) -> (f64, f64) {
        let l = libm::log(self.uniform()) / theta;
        (-libm::expm1(l), libm::exp(l))
    }

    /// Failures before the first success when each failure has probability `w`.
    pub fn geometric(&mut self, w: f64) -> u64 {
        self.geometric_split(w, 1.0 - w)
    }

    /// As [`geometric`](Self::geometric) with failure probability `w` and
    /// success probability `rest = 1 − w` given separately.
    pub fn geometric_split(&mut self, w: f64, rest: f64) -> u64 {
        if w <= 0.0 {
            return 0;
        }
        if rest <= 0.0 {
            return u64::MAX;
        }
        let lw = if w > 0.5 { libm::log1p(-rest) } else { libm::log(w) };
        saturate(libm::floor(libm::log(self.uniform()) / lw))
    }

    /// Failures before the `m`-th success, failure probability `w`,
    /// success probability `rest = 1 − w`. Small `m` sums geometrics; larger
    /// `m` uses the gamma mixture of Poisson laws. Saturates at `u64::MAX`.
    pub fn negative_binomial(&mut self, m: u64, w: f64, rest: f64) -> u64 {
        if m <= 32 {
            return (0..m).fold(0u64, |n, _| n.saturating_add(self.geometric_split(w, rest)));
        }
        if w <= 0.0 {
            return 0;
        }
        if rest <= 0.0 {
            return u64::MAX;
        }
        let g = Gamma::new(m as f64, w / rest).expect("positive shape and scale");
        let lambda = g.sample(&mut self.0);
        if !(lambda > 0.0) {
            return 0;
        }
        if lambda >= 1e18 {
            // relative spread below 1e-9
            return saturate(libm::round(lambda));
        }
        saturate(Poisson::new(lambda).expect("finite positive rate").sample(&mut self.0))
    }

    /// Uniform integer in `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        // Lemire's multiply-shift with rejection
        let mut m = u128::from(self.next_u64()) * u128::from(n);
        if (m as u64) < n {
            let t = n.wrapping_neg() % n;
            while (m as u64) < t {
                m = u128::from(self.next_u64()) * u128::from(n);
            }
        }
        (m >> 64) as u64
    }
}

fn saturate(x: f64) -> u64 {
    if x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproducible_and_distinct() {
        let c = RngConfig::new(7, 3);
        let a: alloc::vec::Vec<u64> = (0..4).map(|t| c.trial_rng(t).next_u64()).collect();
        let b: alloc::vec::Vec<u64> = (0..4).map(|t| c.trial_rng(t).next_u64()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
        assert_ne!(c.trial_rng(0).next_u64(), RngConfig::new(7, 4).trial_rng(0).next_u64());
        let mut r = c.trial_rng(9);
        for _ in 0..1000 {
            let u = r.uniform();
            assert!(u > 0.0 && u < 1.0);
            assert!(r.below(6) < 6);
        }
    }

    #[test]
    fn negative_binomial_mean() {
        let c = RngConfig::new(1, 0);
        for &(m, w) in &[(3u64, 0.4), (50, 0.7), (400, 0.2)] {
            let n = 20_000;
            let mean = (0..n).map(|t| c.trial_rng(t).negative_binomial(m, w, 1.0 - w) as f64).sum::<f64>() / n as f64;
            let target = m as f64 * w / (1.0 - w);
            let sd = (m as f64 * w).sqrt() / (1.0 - w);
            assert!((mean - target).abs() < 5.0 * sd / (n as f64).sqrt(), "m={m} w={w} mean={mean}");
        }
    }
}
