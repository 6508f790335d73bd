//! Seeded Monte Carlo for stick-breaking samples, record chains, Engel
//! digits and Ewens permutations.
//!
//! Every trial draws from its own generator keyed by
//! `(master_seed, stream_id, trial_index)`, and every experiment reports an
//! integer category per trial. Histograms merge by integer addition, so
//! splitting trials over streams (serially or on threads) gives bit-identical
//! pooled estimates.

mod chain;
mod rng;
mod stats;
mod stick;
mod ukn;

pub use chain::{
    chain_vs_records_test, engel_digits, engel_digits_f64, engel_vs_chain_test, sample_qhat, simulate_chain,
    simulate_weak_records, transition_test,
};
pub use rng::{RngConfig, TrialRng};
pub use stats::{chi_square_gof, chi_square_two_sample, ChiSquare, Histogram, MonteCarloEstimate, SeedPlan};
pub use stick::{discover_intervals, estimate_ck, estimate_uk, sample_x, simulate_qstar_path, CkTrial, StickBreaking, UkTrial, XTrial};
pub use ukn::{estimate_ukn, ewens_permutation, UknTrial};

/// One randomized trial reporting a category.
pub trait Experiment: Sync {
    fn trial(&self, rng: &mut TrialRng) -> usize;
}

/// Number of trials assigned to `stream` when `n_trials` are split over
/// `streams` streams (the first `n_trials % streams` streams get one extra).
pub fn stream_share(n_trials: u64, streams: u64, stream: u64) -> u64 {
    n_trials / streams + u64::from(stream < n_trials % streams)
}

/// Run the trials of one stream.
pub fn run_stream(exp: &dyn Experiment, master_seed: u64, stream: u64, trials: u64) -> Histogram {
    let cfg = RngConfig::new(master_seed, stream);
    let mut h = Histogram::new();
    for t in 0..trials {
        let mut rng = cfg.trial_rng(t);
        h.push(exp.trial(&mut rng));
    }
    h
}

/// Run all streams one after another and merge.
pub fn run_serial(exp: &dyn Experiment, plan: SeedPlan, n_trials: u64) -> Histogram {
    let mut h = Histogram::new();
    for s in 0..plan.streams {
        h.merge(&run_stream(exp, plan.master_seed, s, stream_share(n_trials, plan.streams, s)));
    }
    h
}
