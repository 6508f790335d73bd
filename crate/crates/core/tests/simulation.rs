use renewal_zeta::combo::uk_closed;
use renewal_zeta::record::{ck11_table, mean_empty_ck, ChainParams};
use renewal_zeta::sim::*;

const SIGMAS: f64 = 4.5;

fn plan(seed: u64) -> SeedPlan {
    SeedPlan::new(seed, 4)
}

#[test]
fn same_seed_same_output() {
    let a = estimate_uk(2, 1.0, 20_000, plan(7)).unwrap();
    let b = estimate_uk(2, 1.0, 20_000, plan(7)).unwrap();
    assert_eq!(a.mean.to_bits(), b.mean.to_bits());
    assert_eq!(a.std_err.to_bits(), b.std_err.to_bits());
    let c = estimate_uk(2, 1.0, 20_000, plan(8)).unwrap();
    assert_ne!(a.mean.to_bits(), c.mean.to_bits());

    let cfg = RngConfig::new(3, 1);
    let p1 = simulate_qstar_path(5, 1, 0.7, &mut cfg.trial_rng(11)).unwrap();
    let p2 = simulate_qstar_path(5, 1, 0.7, &mut cfg.trial_rng(11)).unwrap();
    assert_eq!(p1, p2);
    assert_eq!(p1.len(), 6);
    assert!(p1[0] == 1 && p1.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn threads_match_serial() {
    let exp = UkTrial { k: 3, theta: 0.8 };
    let p = SeedPlan::new(99, 5);
    let n = 12_345;
    let serial = run_serial(&exp, p, n);
    let parts: Vec<Histogram> = std::thread::scope(|s| {
        let hs: Vec<_> = (0..p.streams)
            .map(|i| {
                let exp = &exp;
                s.spawn(move || run_stream(exp, p.master_seed, i, stream_share(n, p.streams, i)))
            })
            .collect();
        hs.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut merged = Histogram::new();
    for h in &parts {
        merged.merge(h);
    }
    assert_eq!(merged, serial);
    assert_eq!(merged.n(), n);
}

#[test]
fn stream_shares_cover_trials() {
    for (n, s) in [(10u64, 3u64), (7, 7), (5, 8), (1_000_001, 4)] {
        let total: u64 = (0..s).map(|i| stream_share(n, s, i)).sum();
        assert_eq!(total, n);
    }
}

#[test]
fn z_scores_are_calibrated() {
    // u_1(θ) = E W_1 = 1/(1+θ)
    let zs: Vec<f64> = (0..100)
        .map(|r| estimate_uk(1, 1.0, 4_000, SeedPlan::new(1_000 + r, 2)).unwrap().z_score(0.5))
        .collect();
    let mean = zs.iter().sum::<f64>() / 100.0;
    let var = zs.iter().map(|z| (z - mean).powi(2)).sum::<f64>() / 99.0;
    assert!((0.5..=2.0).contains(&var), "var {var}");
    assert!(mean.abs() < 0.5, "mean {mean}");
}

#[test]
fn first_pick_law() {
    let p = plan(21);
    let h = run_serial(&XTrial { theta: 1.0 }, p, 200_000);
    assert!(h.pmf_estimate(1, p).within(0.5, SIGMAS));
    // P(X = k) = θ^{k−1}/(1+θ)^k
    let th = 2.0f64;
    let h = run_serial(&XTrial { theta: th }, p, 200_000);
    for k in 1..6 {
        let target = th.powi(k as i32 - 1) / (1.0 + th).powi(k as i32);
        assert!(h.pmf_estimate(k, p).within(target, SIGMAS), "k={k}");
    }
}

#[test]
fn uk_estimates() {
    for k in 2..=4u32 {
        let target = uk_closed(k).eval().unwrap().value;
        let e = estimate_uk(k as usize, 1.0, 200_000, plan(k as u64)).unwrap();
        assert!(e.within(target, SIGMAS), "k={k} {e:?} vs {target}");
    }
    let th = 50.0;
    let e = estimate_uk(1, th, 100_000, plan(5)).unwrap();
    assert!(e.within(1.0 / (1.0 + th), SIGMAS));
    assert!(estimate_uk(0, 1.0, 10, plan(0)).is_err());
    assert!(estimate_uk(1, -1.0, 10, plan(0)).is_err());
}

#[test]
fn ck_against_exact_rows() {
    let p = ChainParams::uniform();
    for k in 1..=4u32 {
        let row: Vec<f64> = ck11_table(k).unwrap().iter().map(|c| c.eval().unwrap().value).collect();
        let h = estimate_ck(k as usize, p, 100_000, plan(40 + k as u64)).unwrap();
        for (j, &t) in row.iter().enumerate() {
            assert!(h.pmf_estimate(j, plan(0)).within(t, SIGMAS), "k={k} j={j}");
        }
        let obs: Vec<u64> = (0..row.len()).map(|j| h.count(j)).collect();
        assert!(chi_square_gof(&obs, &row, h.n()).passes(SIGMAS));
    }
    let h = estimate_ck(2, p, 200_000, plan(3)).unwrap();
    let target = mean_empty_ck(2).unwrap().eval().unwrap().value;
    assert!(h.mean_estimate(plan(3)).within(target, SIGMAS));
}

#[test]
fn chain_matches_weak_records() {
    for p in [ChainParams::uniform(), ChainParams::new(2, 0.5).unwrap()] {
        let t = chain_vs_records_test(p, 40_000, plan(17));
        assert!(t.passes(SIGMAS), "{p:?} {t:?}");
    }
}

#[test]
fn transitions_follow_kernel() {
    for (m, th) in [(1u64, 1.0), (3, 0.5), (10, 2.0)] {
        let t = transition_test(m, th, 50_000, plan(m));
        assert!(t.passes(SIGMAS), "m={m} {t:?}");
    }
}

#[test]
fn engel_digits_follow_chain() {
    for d in 1..=3 {
        let t = engel_vs_chain_test(50_000, d, plan(d as u64)).unwrap();
        assert!(t.passes(SIGMAS), "depth {d} {t:?}");
    }
    assert!(engel_vs_chain_test(10, 4, plan(0)).is_err());
}

fn cycles(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for i in 0..p.len() {
        if !seen[i] {
            c += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
            }
        }
    }
    c
}

struct PermIndex;

impl Experiment for PermIndex {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let p = ewens_permutation(3, 1.0, rng).unwrap();
        p[0] * 9 + p[1] * 3 + p[2]
    }
}

struct CycleCount(usize, f64);

impl Experiment for CycleCount {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        cycles(&ewens_permutation(self.0, self.1, rng).unwrap())
    }
}

#[test]
fn ewens_sampler() {
    let p = plan(5);
    let h = run_serial(&PermIndex, p, 120_000);
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let obs: Vec<u64> = perms.iter().map(|q| h.count(q[0] * 9 + q[1] * 3 + q[2])).collect();
    assert_eq!(obs.iter().sum::<u64>(), h.n());
    assert!(chi_square_gof(&obs, &[1.0 / 6.0; 6], h.n()).passes(SIGMAS));

    let h = run_serial(&CycleCount(4, 1.0), p, 200_000);
    assert!(h.mean_estimate(p).within(25.0 / 12.0, SIGMAS));
    // E cycles = Σ_{i<n} θ/(θ+i)
    let th = 3.0;
    let h = run_serial(&CycleCount(6, th), p, 200_000);
    let target: f64 = (0..6).map(|i| th / (th + i as f64)).sum();
    assert!(h.mean_estimate(p).within(target, SIGMAS));
}

#[test]
fn ukn_estimates() {
    // By hand over S_3: all permutations except (1 3)(2) qualify.
    let e = estimate_ukn(2, 3, 1.0, 200_000, plan(9)).unwrap();
    assert!(e.within(5.0 / 6.0, SIGMAS), "{e:?}");
    // k = 1: 1 and n share a cycle, probability 1/(1+θ)
    let e = estimate_ukn(1, 5, 2.0, 100_000, plan(10)).unwrap();
    assert!(e.within(1.0 / 3.0, SIGMAS), "{e:?}");
    assert!(estimate_ukn(4, 3, 1.0, 10, plan(0)).is_err());
}

struct PathStep(u64, f64);

impl Experiment for PathStep {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let p = simulate_qstar_path(1, self.0, self.1, rng).unwrap();
        (p[1] - p[0]).min(10_000) as usize
    }
}

fn qhat_oracle(m: u64, n: u64, th: f64) -> f64 {
    // θ/(θ+n) Π_{m ≤ i < n} i/(θ+i)
    (m..n).fold(th / (th + n as f64), |a, i| a * i as f64 / (th + i as f64))
}

#[test]
fn interval_counts_follow_kernel() {
    for (m, th) in [(1u64, 1.0), (2, 0.5), (40, 1.5)] {
        let p = plan(60 + m);
        let h = run_serial(&PathStep(m, th), p, 60_000);
        let top = h.max_category().unwrap().min(4_000);
        let obs: Vec<u64> = (0..=top).map(|c| h.count(c)).collect();
        let probs: Vec<f64> = (0..=top as u64).map(|c| qhat_oracle(m, m + c, th)).collect();
        let t = chi_square_gof(&obs, &probs, h.n());
        assert!(t.passes(SIGMAS), "m={m} {t:?}");
    }
}

#[test]
fn discovery_flags() {
    let cfg = RngConfig::new(4, 0);
    for t in 0..200 {
        let s = discover_intervals(6, 3, 0.4, &mut cfg.trial_rng(t)).unwrap();
        assert_eq!(s.len(), 6);
    }
    assert!(discover_intervals(0, 1, 1.0, &mut cfg.trial_rng(0)).is_err());
}

struct Extent(f64);

impl Experiment for Extent {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        let mut sb = StickBreaking::new(self.0).unwrap();
        sample_x(&mut sb, rng);
        sb.len()
    }
}

#[test]
fn lazy_extension_is_short() {
    // the realized prefix is exactly X; E X = 1 + θ
    for th in [0.5, 1.0, 4.0] {
        let p = plan(70);
        let h = run_serial(&Extent(th), p, 100_000);
        assert!(h.mean_estimate(p).within(1.0 + th, SIGMAS), "θ={th}");
    }
}

struct Second;

impl Experiment for Second {
    fn trial(&self, rng: &mut TrialRng) -> usize {
        simulate_chain(ChainParams::uniform(), 2, rng)[2].min(100) as usize
    }
}

#[test]
fn chain_two_steps() {
    let p = plan(80);
    let h = run_serial(&Second, p, 200_000);
    assert!(h.pmf_estimate(1, p).within(0.25, SIGMAS));
    let r = simulate_weak_records(ChainParams::new(3, 0.7).unwrap(), 5, &mut RngConfig::new(1, 0).trial_rng(0));
    assert_eq!(r[0], 3);
    assert!(r.windows(2).all(|w| w[0] <= w[1]));
}
