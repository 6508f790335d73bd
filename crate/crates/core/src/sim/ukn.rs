use super::{run_serial, Experiment, MonteCarloEstimate, SeedPlan, TrialRng};
use crate::perm::same_first_k_cycles;
use crate::{Error, Result};
use alloc::vec::Vec;

/// Ewens(θ) permutation of `0..n` by the Chinese restaurant process: element
/// `i` opens a new cycle with probability `θ/(θ+i)`, otherwise it is inserted
/// after a uniformly chosen earlier element.
pub fn ewens_permutation(n: usize, theta: f64, rng: &mut TrialRng) -> Result<Vec<usize>> {
    if n == 0 || !(theta > 0.0) {
        return Err(Error::domain("ewens_permutation needs n >= 1 and theta > 0"));
    }
    let mut p: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let open = if i == 0 || theta == 1.0 {
            rng.below(i as u64 + 1) == i as u64
        } else {
            rng.uniform() * (theta + i as f64) < theta
        };
        if open {
            p.push(i);
        } else {
            let j = rng.below(i as u64) as usize;
            p.push(p[j]);
            p[j] = i;
        }
    }
    Ok(p)
}

/// Indicator that the first `k` cycles by least element and by greatest
/// element have the same union.
#[derive(Debug, Clone, Copy)]
pub struct UknTrial {
    pub k: usize,
    pub n: usize,
    pub theta: f64,
}

impl Experiment for UknTrial {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let p = ewens_permutation(self.n, self.theta, rng).expect("validated parameters");
        usize::from(same_first_k_cycles(&p, self.k))
    }
}

pub fn estimate_ukn(k: usize, n: usize, theta: f64, n_trials: u64, plan: SeedPlan) -> Result<MonteCarloEstimate> {
    if k == 0 || k > n || !(theta > 0.0) || n_trials == 0 {
        return Err(Error::domain("estimate_ukn needs 1 <= k <= n, theta > 0 and at least one trial"));
    }
    Ok(run_serial(&UknTrial { k, n, theta }, plan, n_trials).pmf_estimate(1, plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::RngConfig;

    #[test]
    fn is_permutation() {
        let cfg = RngConfig::new(3, 0);
        for t in 0..50 {
            let mut p = ewens_permutation(9, 0.7, &mut cfg.trial_rng(t)).unwrap();
            p.sort_unstable();
            assert_eq!(p, (0..9).collect::<Vec<_>>());
        }
    }

    #[test]
    fn u1n_half() {
        let e = estimate_ukn(1, 5, 1.0, 20_000, SeedPlan::new(2, 1)).unwrap();
        assert!(e.within(0.5, 4.0), "{e:?}");
    }
}
