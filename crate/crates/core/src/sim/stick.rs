use super::{run_serial, Experiment, Histogram, MonteCarloEstimate, SeedPlan, TrialRng};
use crate::record::ChainParams;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// A GEM(θ) partition of `[0, 1)` realized lazily: `W_i` i.i.d. beta(1, θ),
/// interval `I_k = [R_{k−1}, R_k)` with `R_k = 1 − Π_{i≤k}(1 − W_i)`.
#[derive(Debug, Clone)]
pub struct StickBreaking {
    theta: f64,
    w: Vec<f64>,
    r: Vec<f64>,
    rest: f64,
}

impl StickBreaking {
    pub fn new(theta: f64) -> Result<Self> {
        if !(theta > 0.0) {
            return Err(Error::domain("theta must be positive"));
        }
        Ok(StickBreaking { theta, w: Vec::new(), r: Vec::new(), rest: 1.0 })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Number of realized intervals.
    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn factors(&self) -> &[f64] {
        &self.w
    }

    /// Right endpoints `R_1, …, R_m`.
    pub fn right_endpoints(&self) -> &[f64] {
        &self.r
    }

    /// Length `P_k` of interval `k` (1-based), if realized.
    pub fn length(&self, k: usize) -> Option<f64> {
        if k == 0 || k > self.w.len() {
            return None;
        }
        let left = if k == 1 { 0.0 } else { self.r[k - 2] };
        Some(self.r[k - 1] - left)
    }

    pub fn extend(&mut self, rng: &mut TrialRng) {
        let w = rng.beta_one(self.theta);
        self.rest *= 1.0 - w;
        self.w.push(w);
        self.r.push(1.0 - self.rest);
    }
}

/// Index `k` of the interval containing a fresh uniform point, extending the
/// partition as needed.
pub fn sample_x(sb: &mut StickBreaking, rng: &mut TrialRng) -> usize {
    let u = rng.uniform();
    while sb.r.last().is_none_or(|&r| u >= r) {
        sb.extend(rng);
    }
    sb.r.partition_point(|&r| r <= u) + 1
}

/// Marginal law of `X` under GEM(θ): category `k`.
#[derive(Debug, Clone, Copy)]
pub struct XTrial {
    pub theta: f64,
}

impl Experiment for XTrial {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let mut sb = StickBreaking::new(self.theta).expect("validated theta");
        sample_x(&mut sb, rng)
    }
}

/// Interval discovery for the first `k` intervals of a fresh partition:
/// points are drawn until `m` of them land beyond interval `k`, and the
/// result flags which of the first `k` intervals received a point.
///
/// Repeat visits change neither flag nor exit count, so each step draws
/// directly among "exit" (weight `1 − R_k`) and the still-empty intervals
/// (weights `P_j`); at most `k + m` steps.
pub fn discover_intervals(k: usize, m: u64, theta: f64, rng: &mut TrialRng) -> Result<Vec<bool>> {
    if k == 0 || m == 0 {
        return Err(Error::domain("discover_intervals needs k, m >= 1"));
    }
    StickBreaking::new(theta)?;
    let mut len = Vec::with_capacity(k);
    let mut rest = 1.0;
    for _ in 0..k {
        let (w, r) = rng.beta_one_split(theta);
        len.push(rest * w);
        rest *= r;
    }
    let mut seen = vec![false; k];
    let mut exits = 0;
    let mut unseen = k;
    while exits < m && unseen > 0 {
        let mass: f64 = (0..k).filter(|&j| !seen[j]).map(|j| len[j]).sum();
        let mut t = rng.uniform() * (rest + mass);
        if t < rest {
            exits += 1;
            continue;
        }
        t -= rest;
        let mut pick = None;
        for j in (0..k).filter(|&j| !seen[j]) {
            pick = Some(j);
            if t < len[j] {
                break;
            }
            t -= len[j];
        }
        seen[pick.expect("an unseen interval")] = true;
        unseen -= 1;
    }
    Ok(seen)
}

/// Indicator that all of `1..=k` have been seen when the first `X > k` arrives.
#[derive(Debug, Clone, Copy)]
pub struct UkTrial {
    pub k: usize,
    pub theta: f64,
}

impl Experiment for UkTrial {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let seen = discover_intervals(self.k, 1, self.theta, rng).expect("validated parameters");
        usize::from(seen.iter().all(|&s| s))
    }
}

pub fn estimate_uk(k: usize, theta: f64, n_trials: u64, plan: SeedPlan) -> Result<MonteCarloEstimate> {
    if k == 0 || n_trials == 0 {
        return Err(Error::domain("estimate_uk needs k >= 1 and at least one trial"));
    }
    StickBreaking::new(theta)?;
    Ok(run_serial(&UkTrial { k, theta }, plan, n_trials).pmf_estimate(1, plan))
}

/// `(Q*(k), Q*(k−1), …, Q*(0))` at the time `m` points have fallen beyond
/// interval `k`, where `Q*(j)` counts the points beyond interval `j`.
///
/// Each point beyond interval `j − 1` lands in interval `j` with probability
/// `W_j`, so the points in interval `j` are the failures before the
/// `Q*(j)`-th success with success probability `1 − W_j`; counts are drawn
/// interval by interval from `k` down to 1.
pub fn simulate_qstar_path(k: usize, m: u64, theta: f64, rng: &mut TrialRng) -> Result<Vec<u64>> {
    if k == 0 || m == 0 {
        return Err(Error::domain("simulate_qstar_path needs k, m >= 1"));
    }
    StickBreaking::new(theta)?;
    let factors: Vec<(f64, f64)> = (0..k).map(|_| rng.beta_one_split(theta)).collect();
    let mut path = Vec::with_capacity(k + 1);
    let mut q = m;
    path.push(q);
    for &(w, rest) in factors.iter().rev() {
        q = q.saturating_add(rng.negative_binomial(q, w, rest));
        path.push(q);
    }
    Ok(path)
}

/// Number of empty intervals among the first `k` at time `n(k, ℓ)`.
#[derive(Debug, Clone, Copy)]
pub struct CkTrial {
    pub k: usize,
    pub params: ChainParams,
}

impl Experiment for CkTrial {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let seen = discover_intervals(self.k, self.params.ell, self.params.theta, rng).expect("validated parameters");
        seen.iter().filter(|&&s| !s).count()
    }
}

/// Histogram of `C_k` (categories `0..=k`); use
/// [`Histogram::pmf_estimate`] and [`Histogram::mean_estimate`].
pub fn estimate_ck(k: usize, p: ChainParams, n_trials: u64, plan: SeedPlan) -> Result<Histogram> {
    if k == 0 || n_trials == 0 {
        return Err(Error::domain("estimate_ck needs k >= 1 and at least one trial"));
    }
    Ok(run_serial(&CkTrial { k, params: p }, plan, n_trials))
}
