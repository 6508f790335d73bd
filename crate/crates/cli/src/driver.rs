use renewal_zeta::sim::{run_stream, stream_share, Experiment, Histogram, SeedPlan};
use std::thread;

/// One thread per stream; histograms merged in stream order, so the result
/// equals [`renewal_zeta::sim::run_serial`] with the same plan.
pub fn run_parallel(exp: &dyn Experiment, plan: SeedPlan, n_trials: u64) -> Histogram {
    thread::scope(|s| {
        let handles: Vec<_> = (0..plan.streams)
            .map(|i| s.spawn(move || run_stream(exp, plan.master_seed, i, stream_share(n_trials, plan.streams, i))))
            .collect();
        let mut h = Histogram::new();
        for t in handles {
            h.merge(&t.join().expect("worker panicked"));
        }
        h
    })
}
