//! Acceptance criteria: one PASS/FAIL line each, nonzero exit on failure.

use num_traits::Zero;
use renewal_zeta::combo::{uk_closed, uk_recursion_all, uk_series};
use renewal_zeta::harmonic::{identity_suite, uk_theta_series};
use renewal_zeta::perm::{brute_force_ukn, catalan_hypergeometric, noninterference_check, u2_limit, u2n_formula, Ewens};
use renewal_zeta::record::{
    c_inf_pmf, ck11_table, ck_pmf_dp, mean_empty_ck, qhat, record_kernel, uk_strict_path, ChainParams,
};
use renewal_zeta::renewal::{quadratic_renewal, quadratic_stats, u_to_f, QuadraticQ};
use renewal_zeta::scalar::rat;
use renewal_zeta::sim::{
    chain_vs_records_test, engel_vs_chain_test, estimate_ck, estimate_uk, run_stream, stream_share, Histogram,
    SeedPlan, UkTrial,
};
use renewal_zeta::special::zeta_int;
use renewal_zeta::{Bounded, Precision, ZetaCombo};
use std::process::ExitCode;
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn within(a: Bounded, b: Bounded) -> bool {
    (a.value - b.value).abs() <= a.bound + b.bound
}

fn prec() -> Precision {
    Precision::new(1e-13, 50_000_000).unwrap()
}

fn exact_equivalence() -> Outcome {
    let rec = uk_recursion_all(30);
    for (k, r) in rec.iter().enumerate() {
        ensure(*r == uk_closed(k as u32), format!("k={k} differs"))?;
    }
    Ok("k = 0..30 coefficient-wise equal".into())
}

fn three_routes() -> Outcome {
    let mut worst_bound: f64 = 0.0;
    for k in 1..=12u32 {
        let ex = uk_closed(k).eval().map_err(e)?;
        let s = uk_series(k, &prec());
        let p = uk_strict_path(k as usize, 1.0).map_err(e)?;
        ensure(within(ex, s), format!("k={k}: exact {} vs series {}", ex.value, s.value))?;
        ensure(within(ex, p), format!("k={k}: exact {} vs strict path {}", ex.value, p.value))?;
        worst_bound = worst_bound.max(ex.bound + s.bound).max(ex.bound + p.bound);
    }
    ensure(worst_bound <= 1e-9, format!("combined bound {worst_bound:e} > 1e-9"))?;
    Ok(format!("k = 1..12, largest combined bound {worst_bound:.1e}"))
}

fn reference_values() -> Outcome {
    let known = [
        (0, ZetaCombo::constant(rat(1, 1))),
        (1, ZetaCombo::constant(rat(1, 2))),
        (2, ZetaCombo::from_parts(rat(-5, 4), [(2, rat(1, 1))]).map_err(e)?),
        (3, ZetaCombo::from_parts(rat(13, 8), [(2, rat(-3, 2)), (3, rat(1, 1))]).map_err(e)?),
    ];
    for (k, v) in known {
        ensure(uk_closed(k) == v, format!("u_{k} mismatch"))?;
    }
    let s25 = uk_series(25, &prec());
    let gap = s25.value - 1.0 / 3.0;
    ensure(s25.value - s25.bound > 1.0 / 3.0 && gap < 1e-6, format!("u_25 - 1/3 = {gap:e}"))?;
    let f0 = c_inf_pmf(ChainParams::uniform(), 0).map_err(e)?;
    ensure((f0 - 1.0 / 3.0).abs() <= 1e-12, format!("F(0) = {f0}"))?;
    Ok(format!("u_0..u_3 exact, u_25 - 1/3 = {gap:.2e}, F(0) - 1/3 = {:.1e}", f0 - 1.0 / 3.0))
}

fn positivity() -> Outcome {
    let mut u = vec![1.0];
    let mut min_gap = f64::INFINITY;
    for k in 1..=30u32 {
        let s = uk_series(k, &prec());
        ensure(s.value - s.bound > 1.0 / 3.0, format!("u_{k} not above 1/3"))?;
        min_gap = min_gap.min(s.value - 1.0 / 3.0);
        u.push(uk_closed(k).eval().map_err(e)?.value);
    }
    let f = u_to_f(&u, 30).map_err(e)?;
    let fmin = f[1..].iter().copied().fold(f64::INFINITY, f64::min);
    ensure(fmin > 0.0, format!("min f_k = {fmin}"))?;
    Ok(format!("min u_k - 1/3 = {min_gap:.2e}, min f_k = {fmin:.2e}"))
}

fn quadratic_example() -> Outcome {
    let q = QuadraticQ::from_coeffs(0.5, 1.5, 1.0).map_err(e)?;
    let st = quadratic_stats(&q).map_err(e)?;
    ensure(st.mean.value == 3.0, format!("mean {}", st.mean.value))?;
    ensure((st.variance.value - 11.0).abs() <= 1e-9, format!("variance {}", st.variance.value))?;
    ensure((st.u1.value - 0.5).abs() <= 1e-10, format!("u_1 {}", st.u1.value))?;
    let u = quadratic_renewal(&q, 15, 1e-12).map_err(e)?;
    ensure((u[0].value - 1.0).abs() <= 1e-10, format!("u_0 {}", u[0].value))?;
    let mut worst: f64 = 0.0;
    for (k, v) in u.iter().enumerate().skip(1) {
        let d = (v.value - uk_series(k as u32, &prec()).value).abs();
        worst = worst.max(d);
        ensure(d <= 1e-10, format!("k={k}: {d:e}"))?;
    }
    Ok(format!("mean 3, variance - 11 = {:.1e}, worst u_k gap {worst:.1e}", st.variance.value - 11.0))
}

fn record_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for th in [0.5, 1.0, 2.0] {
        let base = |n: u64| qhat(1, n, th);
        for m in 1..=30u64 {
            for n in m..=30u64 {
                let d = (record_kernel(m, n, 1, &base).map_err(e)? - qhat(m, n, th)).abs();
                worst = worst.max(d);
            }
        }
    }
    ensure(worst <= 1e-14, format!("kernel gap {worst:e}"))?;
    let t = chain_vs_records_test(ChainParams::uniform(), 100_000, SeedPlan::new(2024, 4));
    ensure(t.passes(3.0), format!("two-sample z = {:.2}", t.z))?;
    Ok(format!("kernel gap {worst:.1e}, two-sample z = {:.2} (df {})", t.z, t.df))
}

fn ck_table() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 1..=4u32 {
        let row = ck11_table(k).map_err(e)?;
        let total = row.iter().fold(ZetaCombo::zero(), |a, b| a + b.clone());
        ensure(total == ZetaCombo::constant(rat(1, 1)), format!("C_{k} row sum"))?;
        let dp = ck_pmf_dp(k as usize, ChainParams::uniform(), 100_000).map_err(e)?;
        for (j, c) in row.iter().enumerate() {
            let t = c.eval().map_err(e)?;
            let d = (dp.get(j as u64) - t.value).abs();
            worst = worst.max(d);
            ensure(d <= dp.truncation_mass + 1e-10 + t.bound, format!("P(C_{k}={j}) off by {d:e}"))?;
        }
    }
    let row2 = ck11_table(2).map_err(e)?;
    let mean = row2.iter().enumerate().fold(ZetaCombo::zero(), |a, (j, c)| a + c.scale(&rat(j as i64, 1)));
    let m2 = ZetaCombo::from_parts(rat(5, 2), [(2, rat(-1, 1))]).map_err(e)?;
    ensure(mean == m2 && mean_empty_ck(2).map_err(e)? == m2, "E C_2")?;
    Ok(format!("rows k = 1..4, worst gap {worst:.1e}, E C_2 = 5/2 - zeta(2) exactly"))
}

fn identities() -> Outcome {
    let checks = identity_suite().map_err(e)?;
    let mut worst: f64 = 0.0;
    for c in &checks {
        ensure(c.pass && c.residual <= 1e-8, format!("{}: residual {:e}", c.name, c.residual))?;
        worst = worst.max(c.residual);
    }
    Ok(format!("{} identities, largest residual {worst:.1e}", checks.len()))
}

fn permutations() -> Outcome {
    for (p, q) in [(1, 2), (1, 1), (2, 1)] {
        let th = rat(p, q);
        let ew = Ewens::new(th.clone()).map_err(e)?;
        for n in 3..=8 {
            ensure(u2n_formula(n, &ew).map_err(e)? == brute_force_ukn(2, n, &th).map_err(e)?, format!("u_2:{n}"))?;
        }
        let target = rat(1, 1) / (rat(1, 1) + &th);
        for n in 2..=8 {
            ensure(brute_force_ukn(1, n, &th).map_err(e)? == target, format!("u_1:{n}"))?;
        }
        for n in 4..=9 {
            ensure(noninterference_check(n, &ew).map_err(e)?.is_zero(), format!("non-interference n={n}"))?;
        }
    }
    ensure(brute_force_ukn(2, 3, &rat(1, 1)).map_err(e)? == rat(5, 6), "u_2:3")?;
    Ok("all exact for theta in {1/2, 1, 2}".into())
}

fn parallel_uk(k: usize, n: u64, plan: SeedPlan) -> Histogram {
    let exp = UkTrial { k, theta: 1.0 };
    std::thread::scope(|s| {
        let hs: Vec<_> = (0..plan.streams)
            .map(|i| {
                let exp = &exp;
                s.spawn(move || run_stream(exp, plan.master_seed, i, stream_share(n, plan.streams, i)))
            })
            .collect();
        let mut h = Histogram::new();
        for t in hs {
            h.merge(&t.join().unwrap());
        }
        h
    })
}

fn monte_carlo() -> Outcome {
    let plan = SeedPlan::new(20_240_601, 8);
    let n = 1_000_000;
    let u1 = parallel_uk(1, n, plan).pmf_estimate(1, plan);
    ensure(u1.within(0.5, 4.0), format!("u_1 z = {:.2}", u1.z_score(0.5)))?;
    let u2 = parallel_uk(2, n, plan).pmf_estimate(1, plan);
    ensure(u2.within(0.394934, 4.0), format!("u_2 z = {:.2}", u2.z_score(0.394934)))?;
    let again = estimate_uk(1, 1.0, 100_000, plan).map_err(e)?;
    let repeat = estimate_uk(1, 1.0, 100_000, plan).map_err(e)?;
    ensure(again.mean.to_bits() == repeat.mean.to_bits(), "not reproducible")?;
    let h = estimate_ck(2, ChainParams::uniform(), n, plan).map_err(e)?;
    let row = ck11_table(2).map_err(e)?;
    let mut zmax: f64 = 0.0;
    for (j, c) in row.iter().enumerate() {
        let z = h.pmf_estimate(j, plan).z_score(c.eval().map_err(e)?.value);
        zmax = zmax.max(z.abs());
        ensure(z.abs() <= 4.0, format!("C_2 cell {j}: z = {z:.2}"))?;
    }
    let engel = engel_vs_chain_test(100_000, 2, plan).map_err(e)?;
    ensure(engel.passes(3.0), format!("Engel z = {:.2}", engel.z))?;
    Ok(format!(
        "z: u_1 {:.2}, u_2 {:.2}, C_2 max {zmax:.2}, Engel {:.2}",
        u1.z_score(0.5),
        u2.z_score(0.394934),
        engel.z
    ))
}

fn general_theta() -> Outcome {
    let mut worst: f64 = 0.0;
    for th in [0.5, 1.0, 2.0, 3.0] {
        let a = uk_theta_series(2, th).map_err(e)?;
        let b = u2_limit(th).map_err(e)?;
        let d = (a.value - b.series.value).abs();
        worst = worst.max(d);
        ensure(d <= 1e-8, format!("theta={th}: {d:e}"))?;
    }
    let g = catalan_hypergeometric().map_err(e)?;
    let half = u2_limit(0.5).map_err(e)?.series.value;
    let d = (half - (2.0 * g.value - 11.0 / 9.0)).abs();
    ensure(d <= 1e-10, format!("2G - 11/9 gap {d:e}"))?;
    let z2 = zeta_int(2).map_err(e)?.value;
    ensure((u2_limit(1.0).map_err(e)?.series.value - (z2 - 1.25)).abs() <= 1e-10, "theta=1 limit")?;
    Ok(format!("worst route gap {worst:.1e}, u_2(1/2) - (2G - 11/9) = {d:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("exact equivalence of recursion and closed form", exact_equivalence, Duration::from_secs(1)),
        ("three-route agreement for u_k", three_routes, Duration::from_secs(60)),
        ("reference values u_0..u_3, u_25, F(0)", reference_values, Duration::from_secs(60)),
        ("positivity of u_k - 1/3 and f_k", positivity, Duration::from_secs(60)),
        ("quadratic renewal example", quadratic_example, Duration::from_secs(60)),
        ("record equivalence", record_equivalence, Duration::from_secs(120)),
        ("C_k table", ck_table, Duration::from_secs(120)),
        ("identity suite", identities, Duration::from_secs(300)),
        ("finite-n permutation oracle", permutations, Duration::from_secs(120)),
        ("Monte Carlo calibration", monte_carlo, Duration::from_secs(120)),
        ("general theta cross-check", general_theta, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = f();
        let dt = t.elapsed();
        let r = match r {
            Ok(msg) if dt > *limit => Err(format!("{msg}; took {dt:.1?}, limit {limit:?}")),
            r => r,
        };
        match r {
            Ok(msg) => println!("PASS {:>2} {name} [{dt:.2?}]: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{dt:.2?}]: {msg}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
