use super::{chi_square_gof, chi_square_two_sample, run_serial, ChiSquare, Experiment, SeedPlan, TrialRng};
use crate::record::{path_prob, qhat, survival, ChainParams};
use crate::scalar::f64_to_rat;
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// One step of the record chain from state `m`: given `W ~ beta(1, θ)`, the
/// next state is `m` plus the failures before `m` successes of probability
/// `1 − W`.
pub fn sample_qhat(m: u64, theta: f64, rng: &mut TrialRng) -> u64 {
    let (w, rest) = rng.beta_one_split(theta);
    m.saturating_add(rng.negative_binomial(m, w, rest))
}

/// `(Q̂_0 = ℓ, Q̂_1, …, Q̂_steps)`.
pub fn simulate_chain(p: ChainParams, steps: usize, rng: &mut TrialRng) -> Vec<u64> {
    let mut path = Vec::with_capacity(steps + 1);
    path.push(p.ell);
    for _ in 0..steps {
        let m = *path.last().expect("nonempty");
        path.push(sample_qhat(m, p.theta, rng));
    }
    path
}

const SAMPLE_CAP: u64 = 1 << 62;

/// Draw from `q̂(ℓ, ·)` conditioned on `X ≥ r` by inverting the survival
/// function `P(X ≥ n) = Π_{i=ℓ}^{n−1} i/(θ+i)`.
fn sample_base_at_least(ell: u64, r: u64, theta: f64, rng: &mut TrialRng) -> u64 {
    let s = |n: u64| survival(ell, n - 1, theta);
    let t = rng.uniform() * s(r);
    // X = max{n ≥ r : S(n) > t}
    let mut lo = r;
    let mut step = 1u64;
    let hi = loop {
        let n = lo.saturating_add(step).min(SAMPLE_CAP);
        if s(n) <= t {
            break n;
        }
        if n == SAMPLE_CAP {
            return SAMPLE_CAP;
        }
        lo = n;
        step = step.saturating_mul(2);
    };
    let mut hi = hi;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if s(mid) > t {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Weak ascending records `(R_0 = ℓ, R_1, …, R_steps)` of i.i.d. draws from
/// `q̂(ℓ, ·)`. Draws below the current record are skipped by sampling the
/// next qualifying draw directly from the conditional law.
pub fn simulate_weak_records(p: ChainParams, steps: usize, rng: &mut TrialRng) -> Vec<u64> {
    let mut path = Vec::with_capacity(steps + 1);
    path.push(p.ell);
    for _ in 0..steps {
        let r = *path.last().expect("nonempty");
        path.push(sample_base_at_least(p.ell, r, p.theta, rng));
    }
    path
}

const PAIR_CELLS: u64 = 40;

fn pair_category(path: &[u64], ell: u64) -> usize {
    let (a, b) = (path[1] - ell, path[2] - ell);
    if a < PAIR_CELLS && b < PAIR_CELLS {
        (a * PAIR_CELLS + b) as usize
    } else {
        (PAIR_CELLS * PAIR_CELLS) as usize
    }
}

struct ChainPair(ChainParams);
struct RecordPair(ChainParams);
struct Step(u64, f64);

impl Experiment for ChainPair {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        pair_category(&simulate_chain(self.0, 2, rng), self.0.ell)
    }
}

impl Experiment for RecordPair {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        pair_category(&simulate_weak_records(self.0, 2, rng), self.0.ell)
    }
}

impl Experiment for Step {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        (sample_qhat(self.0, self.1, rng) - self.0).min(1 << 20) as usize
    }
}

fn offset_plan(plan: SeedPlan) -> SeedPlan {
    SeedPlan::new(plan.master_seed.wrapping_add(0x9E37_79B9_7F4A_7C15), plan.streams)
}

/// Two-sample test of the joint law of `(Q̂_1, Q̂_2)` from the chain
/// simulator against the weak-record simulator.
pub fn chain_vs_records_test(p: ChainParams, n_trials: u64, plan: SeedPlan) -> ChiSquare {
    let a = run_serial(&ChainPair(p), plan, n_trials);
    let b = run_serial(&RecordPair(p), offset_plan(plan), n_trials);
    let cells = (PAIR_CELLS * PAIR_CELLS + 1) as usize;
    let ca: Vec<u64> = (0..cells).map(|c| a.count(c)).collect();
    let cb: Vec<u64> = (0..cells).map(|c| b.count(c)).collect();
    chi_square_two_sample(&ca, &cb)
}

/// Goodness of fit of simulated one-step transitions from `m` to `q̂(m, ·)`.
pub fn transition_test(m: u64, theta: f64, n_trials: u64, plan: SeedPlan) -> ChiSquare {
    let h = run_serial(&Step(m, theta), plan, n_trials);
    let top = h.max_category().unwrap_or(0).min(10_000);
    let obs: Vec<u64> = (0..=top).map(|c| h.count(c)).collect();
    let probs: Vec<f64> = (0..=top as u64).map(|c| qhat(m, m + c, theta)).collect();
    chi_square_gof(&obs, &probs, h.n())
}

/// Engel digits `2 ≤ q_1 ≤ q_2 ≤ …` of `u ∈ (0, 1)`, `u = Σ 1/(q_1⋯q_i)`,
/// up to `depth` of them (fewer if the expansion terminates).
pub fn engel_digits(u: &BigRational, depth: usize) -> Result<Vec<BigInt>> {
    if !u.is_positive() || *u >= BigRational::one() {
        return Err(Error::domain("Engel expansion needs 0 < u < 1"));
    }
    let mut out = Vec::with_capacity(depth);
    let mut x = u.clone();
    while out.len() < depth && !x.is_zero() {
        // q = ⌈1/x⌉
        let q = x.denom().div_ceil(x.numer());
        x = &x * BigRational::from_integer(q.clone()) - BigRational::one();
        out.push(q);
    }
    Ok(out)
}

/// Engel digits of the exact binary value of `u`.
pub fn engel_digits_f64(u: f64, depth: usize) -> Result<Vec<BigInt>> {
    let r = f64_to_rat(u).ok_or_else(|| Error::domain("u must be finite"))?;
    engel_digits(&r, depth)
}

const ENGEL_CELLS: u64 = 30;

struct EngelTrial(usize);

fn engel_category(digits: &[u64]) -> usize {
    let mut c = 0u64;
    for &q in digits {
        c = c * ENGEL_CELLS + (q - 2);
    }
    c as usize
}

impl Experiment for EngelTrial {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let m = rng.uniform_bits();
        let u = BigRational::new(BigInt::from(2 * m + 1), BigInt::one() << 54u32);
        let d = engel_digits(&u, self.0).expect("u in (0,1)");
        let small: Vec<u64> = d.iter().filter_map(|q| q.to_u64()).filter(|&q| q - 1 <= ENGEL_CELLS).collect();
        if small.len() == self.0 {
            engel_category(&small)
        } else {
            usize::MAX
        }
    }
}

/// Compare the law of `(q_1 − 1, …, q_depth − 1)` for uniform `u` with the
/// path law of the uniform record chain from `Q̂_0 = 1`; `depth ≤ 3`.
pub fn engel_vs_chain_test(n_trials: u64, depth: usize, plan: SeedPlan) -> Result<ChiSquare> {
    if depth == 0 || depth > 3 {
        return Err(Error::domain("engel_vs_chain_test supports depth 1..=3"));
    }
    let h = run_serial(&EngelTrial(depth), plan, n_trials);
    let mut obs = Vec::new();
    let mut probs = Vec::new();
    let mut path = vec![1u64; depth];
    loop {
        let digits: Vec<u64> = path.iter().map(|&a| a + 1).collect();
        obs.push(h.count(engel_category(&digits)));
        probs.push(crate::scalar::rat_to_f64(&path_prob(&path)));
        // next weakly increasing tuple with entries in 1..=ENGEL_CELLS
        let mut i = depth;
        while i > 0 && path[i - 1] == ENGEL_CELLS {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let v = path[i - 1] + 1;
        for x in &mut path[i - 1..] {
            *x = v;
        }
    }
    Ok(chi_square_gof(&obs, &probs, h.n()))
}
