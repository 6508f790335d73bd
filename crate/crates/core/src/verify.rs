//! Identity checks grouped into suites. Every check compares two routes to
//! the same quantity against the sum of their reported error bounds.

use crate::combo::{uk_closed, uk_genfun, uk_recursion_all, uk_series, ZetaCombo};
use crate::harmonic::{
    hurwitz_multi, identity_suite, mzv, mzv_star, xi_series, star_expand, uk_theta_series, xi_integral, MzvIndex,
};
use crate::perm::{brute_force_ukn, catalan_hypergeometric, noninterference_check, u2_limit, u2n_formula, Ewens, PitmanYor};
use crate::precision::{Bounded, Precision, Sum};
use crate::record::{
    c_inf_pmf, c_inf_pmf_all, c_inf_pmf_mixed_poisson, ck11_table, ck_pmf_dp, inv_moment_q1, inv_moment_qk,
    mean_empty_ck, qhat, qhat_exact, qk_dist, qk_dist_kernel, record_kernel, uk_strict_path, ChainParams,
};
use crate::renewal::{
    f_to_u, kaluza_check, normalize_a, quadratic_renewal, quadratic_stats, u_to_f, urec_residuals, QuadraticQ,
    NORMALIZATION_TOL,
};
use crate::scalar::{rat, rat_to_f64};
use crate::special::catalan;
use crate::Result;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use num_traits::Zero;

/// Slack for rounding not captured by the individual bounds, relative to the
/// magnitude of the compared values.
const REL_SLACK: f64 = 64.0 * f64::EPSILON;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub budget: f64,
    pub pass: bool,
}

impl Check {
    /// `|lhs − rhs| ≤ lhs.bound + rhs.bound + slack`.
    pub fn compare(name: impl Into<String>, lhs: Bounded, rhs: Bounded) -> Self {
        let residual = (lhs.value - rhs.value).abs();
        let budget = lhs.bound + rhs.bound + REL_SLACK * lhs.value.abs().max(rhs.value.abs()).max(1.0);
        Check {
            name: name.into(),
            lhs: lhs.value,
            rhs: rhs.value,
            residual,
            budget,
            pass: residual <= budget && residual.is_finite(),
        }
    }

    /// Exact comparison (e.g. of rational combinations): residual 0 or 1.
    pub fn exact(name: impl Into<String>, equal: bool) -> Self {
        let r = if equal { 0.0 } else { 1.0 };
        Check { name: name.into(), lhs: r, rhs: 0.0, residual: r, budget: 0.0, pass: equal }
    }

    /// A one-sided condition, reported with the given numeric witness.
    pub fn condition(name: impl Into<String>, witness: f64, holds: bool) -> Self {
        Check {
            name: name.into(),
            lhs: witness,
            rhs: 0.0,
            residual: if holds { 0.0 } else { 1.0 },
            budget: 0.0,
            pass: holds,
        }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

pub fn max_residual(checks: &[Check]) -> f64 {
    checks.iter().map(|c| c.residual).fold(0.0, f64::max)
}


/// Named groups of checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Zeta,
    Renewal,
    Chain,
    Mzv,
    Perm,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["all", "zeta", "renewal", "chain", "mzv", "perm"];

    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "all" => Suite::All,
            "zeta" => Suite::Zeta,
            "renewal" => Suite::Renewal,
            "chain" => Suite::Chain,
            "mzv" => Suite::Mzv,
            "perm" => Suite::Perm,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Zeta => "zeta",
            Suite::Renewal => "renewal",
            Suite::Chain => "chain",
            Suite::Mzv => "mzv",
            Suite::Perm => "perm",
        }
    }
}

/// Run a suite with the library's own closed form for `u_k`.
pub fn run_suite(s: Suite) -> Result<Vec<Check>> {
    run_suite_with(s, &uk_closed)
}

/// Run a suite with a substitute closed form for `u_k` (used to check that
/// the suite detects a wrong formula).
pub fn run_suite_with(s: Suite, closed: &dyn Fn(u32) -> ZetaCombo) -> Result<Vec<Check>> {
    Ok(match s {
        Suite::Zeta => zeta_suite(closed)?,
        Suite::Renewal => renewal_suite()?,
        Suite::Chain => chain_suite()?,
        Suite::Mzv => mzv_suite()?,
        Suite::Perm => perm_suite()?,
        Suite::All => {
            let mut v = zeta_suite(closed)?;
            v.extend(renewal_suite()?);
            v.extend(chain_suite()?);
            v.extend(mzv_suite()?);
            v.extend(perm_suite()?);
            v
        }
    })
}

/// `u_k` with the sign of every ζ coefficient flipped.
pub fn sign_flipped_closed(k: u32) -> ZetaCombo {
    let c = uk_closed(k);
    let mut out = ZetaCombo::constant(c.c0().clone());
    for (j, a) in c.terms() {
        out = out - ZetaCombo::term(j, a.clone()).expect("index >= 2");
    }
    out
}

fn series_prec() -> Precision {
    Precision::new(1e-13, 50_000_000).expect("valid precision")
}

fn zeta_suite(closed: &dyn Fn(u32) -> ZetaCombo) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let rec = uk_recursion_all(30);
    let mut exact_ok = true;
    for (k, r) in rec.iter().enumerate() {
        exact_ok &= *r == closed(k as u32);
    }
    out.push(Check::exact("u_k recursion == closed form, k <= 30", exact_ok));
    let known = [
        (0, ZetaCombo::constant(rat(1, 1))),
        (1, ZetaCombo::constant(rat(1, 2))),
        (2, ZetaCombo::from_parts(rat(-5, 4), [(2, rat(1, 1))])?),
        (3, ZetaCombo::from_parts(rat(13, 8), [(2, rat(-3, 2)), (3, rat(1, 1))])?),
    ];
    for (k, v) in known {
        out.push(Check::exact(format!("u_{k} closed value"), closed(k) == v));
    }
    let prec = series_prec();
    let mut u = Vec::new();
    for k in 0..=30u32 {
        let ex = closed(k).eval()?;
        let s = uk_series(k, &prec);
        if (1..=12).contains(&k) {
            out.push(Check::compare(format!("u_{k} exact vs series"), ex, s));
            out.push(Check::compare(format!("u_{k} exact vs strict path"), ex, uk_strict_path(k as usize, 1.0)?));
        }
        u.push(ex.value);
        if k >= 1 {
            out.push(Check::condition(format!("u_{k} > 1/3"), s.value - 1.0 / 3.0, s.value - s.bound > 1.0 / 3.0));
        }
    }
    let f = u_to_f(&u, 30)?;
    let fmin = f[1..].iter().copied().fold(f64::INFINITY, f64::min);
    out.push(Check::condition("f_k > 0, k <= 30", fmin, fmin > 0.0));
    let kal = kaluza_check(&u, 29, 1e-14)?;
    out.push(Check::condition("u_k log-convex, k <= 29", kal.first_violation.map_or(0.0, |k| k as f64), kal.holds));
    let s25 = uk_series(25, &prec);
    let gap = s25.value - 1.0 / 3.0;
    out.push(Check::condition("0 < u_25 - 1/3 < 1e-6", gap, s25.value - s25.bound > 1.0 / 3.0 && gap < 1e-6));
    let f0 = c_inf_pmf(ChainParams::uniform(), 0)?;
    out.push(Check::compare("P(C_inf = 0) = 1/3", Bounded::new(f0, 1e-13), Bounded::exact(1.0 / 3.0)));
    for &z in &[-0.5, 0.25, 0.5] {
        let g = uk_genfun(z)?;
        let mut acc = Sum::new();
        let mut zk = 1.0;
        let mut tail = 0.0;
        for k in 0..=200u32 {
            let v = if k <= 30 { u[k as usize] } else { uk_series(k, &prec).value };
            acc.add(v * zk);
            zk *= z;
            tail = zk.abs() / (1.0 - z.abs());
        }
        out.push(Check::compare(format!("generating function at z={z}"), g, Bounded::new(acc.value(), tail + 1e-15)));
    }
    Ok(out)
}

fn renewal_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let q = QuadraticQ::from_coeffs(0.5, 1.5, 1.0)?;
    let a = normalize_a(-1.0, -2.0)?;
    out.push(Check::compare("normalizing a for roots -1, -2", Bounded::new(a, 1e-14), Bounded::exact(0.5)));
    let st = quadratic_stats(&q)?;
    out.push(Check::compare("mean = q(1) = 3", st.mean, Bounded::exact(3.0)));
    out.push(Check::compare("variance = 11", st.variance, Bounded::exact(11.0)));
    out.push(Check::compare("u_1 = 1/2", st.u1, Bounded::exact(0.5)));
    out.push(Check::compare("u_inf = 1/3", st.u_inf, Bounded::exact(1.0 / 3.0)));
    let u = quadratic_renewal(&q, 15, NORMALIZATION_TOL)?;
    out.push(Check::compare("u_0 = 1", u[0], Bounded::exact(1.0)));
    let prec = series_prec();
    for (k, v) in u.iter().enumerate().skip(1) {
        out.push(Check::compare(format!("quadratic u_{k} vs series"), *v, uk_series(k as u32, &prec)));
    }
    let worst = urec_residuals(&q, &u)?.into_iter().fold(0.0, |m: f64, (r, b)| m.max(r - b));
    out.push(Check::condition("renewal recursion residuals within budget", worst, worst <= 0.0));
    let uf: Vec<f64> = u.iter().map(|b| b.value).collect();
    let f = u_to_f(&uf, 15)?;
    let back = f_to_u(&f, 15)?;
    let dev = uf.iter().zip(&back).skip(1).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    out.push(Check::condition("u -> f -> u round trip", dev, dev < 1e-13));
    // complex conjugate roots: normalized a must give u_0 = 1
    let qc = QuadraticQ::from_complex_roots(-1.5, 0.8)?;
    let uc = quadratic_renewal(&qc, 5, NORMALIZATION_TOL)?;
    out.push(Check::compare("complex roots: u_0 = 1", uc[0], Bounded::exact(1.0)));
    Ok(out)
}

fn chain_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (tn, td) in [(1, 2), (1, 1), (2, 1)] {
        let th = rat(tn, td);
        let thf = tn as f64 / td as f64;
        let base = |n: u64| qhat(1, n, thf);
        let mut worst: f64 = 0.0;
        for m in 1..=30u64 {
            for n in m..=30u64 {
                worst = worst.max((record_kernel(m, n, 1, &base)? - qhat(m, n, thf)).abs());
            }
        }
        out.push(Check::condition(format!("record kernel = q-hat, theta={tn}/{td}"), worst, worst <= 1e-14));
        let base_exact = |n: u64| qhat_exact(1, n, &th);
        let same = (1..=12u64).all(|m| {
            (m..=12).all(|n| record_kernel(m, n, 1, &base_exact).map(|v| v == qhat_exact(m, n, &th)).unwrap_or(false))
        });
        out.push(Check::exact(format!("record kernel = q-hat exactly, theta={tn}/{td}"), same));
    }
    for k in 1..=5usize {
        let a = qk_dist(k, 200)?;
        let b = qk_dist_kernel(k, ChainParams::uniform(), 200)?;
        let d = (1..=200u64).map(|n| (a.get(n) - b.get(n)).abs()).fold(0.0, f64::max);
        out.push(Check::condition(format!("Q_{k} law: harmonic sums vs kernel powers"), d, d <= 1e-12));
    }
    let big_n = 100_000;
    for k in 1..=4u32 {
        let row = ck11_table(k)?;
        let total = row.iter().fold(ZetaCombo::zero(), |a, b| a + b.clone());
        out.push(Check::exact(format!("C_{k} table row sums to 1"), total == ZetaCombo::constant(rat(1, 1))));
        let dp = ck_pmf_dp(k as usize, ChainParams::uniform(), big_n)?;
        for (j, c) in row.iter().enumerate() {
            let lhs = Bounded::new(dp.get(j as u64), dp.truncation_mass + 1e-10);
            out.push(Check::compare(format!("P(C_{k} = {j}) table vs DP"), lhs, c.eval()?));
        }
    }
    let row2 = ck11_table(2)?;
    let mean = row2.iter().enumerate().fold(ZetaCombo::zero(), |a, (j, c)| a + c.scale(&rat(j as i64, 1)));
    let m2 = ZetaCombo::from_parts(rat(5, 2), [(2, rat(-1, 1))])?;
    out.push(Check::exact("E C_2 = 5/2 - zeta(2) from the table", mean == m2 && mean_empty_ck(2)? == m2));
    for (l, th) in [(1u64, 0.5), (1, 1.0), (1, 2.0), (2, 0.5), (2, 1.0), (2, 2.0)] {
        let p = ChainParams::new(l, th)?;
        let pmf = c_inf_pmf_all(p, 60)?;
        let s: f64 = pmf.iter().sum();
        out.push(Check::compare(format!("C_inf pmf sums to 1, l={l}, theta={th}"), Bounded::new(s, 1e-10), Bounded::exact(1.0)));
        for (j, &v) in pmf.iter().take(4).enumerate() {
            let mp = c_inf_pmf_mixed_poisson(p, j, 1e-11)?;
            out.push(Check::compare(format!("C_inf mixed Poisson j={j}, l={l}, theta={th}"), mp, Bounded::new(v, 1e-9)));
        }
    }
    for k in 2..=12u32 {
        let v = inv_moment_qk(k)?.eval()?;
        out.push(Check::condition(format!("0 < E 1/(Q_{k}+1) < 1"), v.value, v.value > 0.0 && v.value < 1.0));
    }
    let q1 = inv_moment_q1().eval()?;
    let direct = qk_dist(1, 200_000)?;
    let s: f64 = (1..=200_000u64).map(|n| direct.get(n) / (n as f64 + 1.0)).sum();
    out.push(Check::compare("E 1/(Q_1+1) = 2 - zeta(2)", q1, Bounded::new(s, 1e-10)));
    Ok(out)
}

fn mzv_suite() -> Result<Vec<Check>> {
    let mut out = identity_suite()?;
    for (m, s) in [(1u32, 3u32), (2, 2), (2, 3)] {
        let series = xi_series(m, s)?;
        let integral = xi_integral(m, s as f64, 1e-12)?;
        out.push(Check::compare(format!("xi_{m}({s}) series vs integral"), series, integral));
    }
    let idx = MzvIndex::new(vec![2, 1, 3])?;
    let star = mzv_star(&idx)?;
    let sum = star_expand(&idx).iter().try_fold(Bounded::ZERO, |a, i| mzv(i).map(|v| a + v))?;
    out.push(Check::compare("zeta*(2,1,3) = sum over comma/plus expansions", star, sum));
    for x in [1.0, 2.0, 3.0] {
        let lhs = hurwitz_multi(&[1, 2], x)?;
        let rhs = hurwitz_multi(&[1, 2], x + 1.0)? + hurwitz_multi(&[2], x + 1.0)?.scale(1.0 / (x + 1.0));
        out.push(Check::compare(format!("multiple Hurwitz recursion at x={x}"), lhs, rhs));
    }
    Ok(out)
}

fn perm_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (tn, td) in [(1, 2), (1, 1), (2, 1)] {
        let th = rat(tn, td);
        let e = Ewens::new(th.clone())?;
        let mut same = true;
        for n in 3..=8 {
            same &= u2n_formula(n, &e)? == brute_force_ukn(2, n, &th)?;
        }
        out.push(Check::exact(format!("u_(2:n) formula = enumeration, n <= 8, theta={tn}/{td}"), same));
        let one = rat(1, 1);
        let target = &one / (&one + &th);
        let mut ok = true;
        for n in 2..=8 {
            ok &= brute_force_ukn(1, n, &th)? == target;
        }
        out.push(Check::exact(format!("u_(1:n) = 1/(1+theta), n <= 8, theta={tn}/{td}"), ok));
        let mut zero = true;
        for n in 4..=9 {
            zero &= noninterference_check(n, &e)?.is_zero();
        }
        out.push(Check::exact(format!("non-interference, n <= 9, theta={tn}/{td}"), zero));
    }
    out.push(Check::exact("u_(2:3) = 5/6", brute_force_ukn(2, 3, &rat(1, 1))? == rat(5, 6)));
    let py = PitmanYor::new(rat(1, 2), rat(1, 2))?;
    out.push(Check::exact("non-interference fails for a non-Ewens EPPF", !noninterference_check(4, &py)?.is_zero()));
    for &th in &[0.5, 1.0, 2.0, 3.0] {
        let lim = u2_limit(th)?;
        out.push(Check::compare(format!("u_2 limit: series vs 3F2, theta={th}"), lim.series, lim.hypergeometric));
        let via_u2 = uk_theta_series(2, th)?;
        out.push(Check::compare(format!("u_2: nested sum vs limit, theta={th}"), via_u2, lim.series));
    }
    let g = catalan_hypergeometric()?;
    out.push(Check::compare("Catalan constant: 3F2 vs beta(2)", g, catalan()));
    let half = u2_limit(0.5)?;
    let closed = g.scale(2.0) - Bounded::exact(11.0 / 9.0);
    out.push(Check::compare("u_2 at theta=1/2 equals 2G - 11/9", half.series, closed));
    let lim1 = u2_limit(1.0)?.series.value;
    let e1 = Ewens::new(rat(1, 1))?;
    let mut prev = f64::INFINITY;
    let mut shrinking = true;
    let mut last = 0.0;
    for m in 2..=7 {
        let gap = (rat_to_f64(&u2n_formula(1 << m, &e1)?) - lim1).abs();
        shrinking &= gap < prev;
        prev = gap;
        last = gap;
    }
    out.push(Check::condition("u_(2:n) gaps to the limit shrink, n = 4..128", last, shrinking));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_suite(s: Suite) {
        let checks = run_suite(s).unwrap();
        let failed: Vec<&Check> = checks.iter().filter(|c| !c.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn zeta() {
        assert_suite(Suite::Zeta);
    }

    #[test]
    fn renewal() {
        assert_suite(Suite::Renewal);
    }

    #[test]
    fn chain() {
        assert_suite(Suite::Chain);
    }

    #[test]
    fn mzv() {
        assert_suite(Suite::Mzv);
    }

    #[test]
    fn perm() {
        assert_suite(Suite::Perm);
    }

    #[test]
    fn sign_flip_is_caught() {
        let checks = run_suite_with(Suite::Zeta, &sign_flipped_closed).unwrap();
        assert!(!checks[0].pass);
    }
}
