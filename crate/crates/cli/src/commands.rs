use crate::driver::run_parallel;
use crate::envelope::{rational_string, OutputEnvelope, SeedInfo, SCHEMA_VERSION};
use crate::{
    Command, MzvCommand, SimArgs, SimCommand, TableArgs, TableKind, U2LimitArgs, UkArgs, UkMode, UknArgs,
    UsageError, VerifyArgs,
};
use anyhow::Result;
use renewal_zeta::combo::{combo_summary, uk_closed, uk_series};
use renewal_zeta::harmonic::{duality_check, identity_suite, mzv, mzv_star, uk_theta_series, MzvIndex};
use renewal_zeta::perm::{brute_force_ukn, u2_limit, u2n_formula, Ewens};
use renewal_zeta::record::{ck11_table, ck_pmf_dp, qk_dist, qk_dist_kernel, uk_strict_path, ChainParams};
use renewal_zeta::renewal::{quadratic_renewal_prec, u_to_f, QuadraticQ};
use renewal_zeta::sim::{
    chain_vs_records_test, engel_vs_chain_test, transition_test, CkTrial, ChiSquare, Experiment,
    MonteCarloEstimate, SeedPlan, UkTrial, UknTrial,
};
use renewal_zeta::verify::{all_pass, max_residual, run_suite, run_suite_with, sign_flipped_closed, Check, Suite};
use renewal_zeta::{Bounded, Precision, ZetaCombo};
use serde::Serialize;
use serde_json::{json, Map, Value};
use std::fmt::Write;

pub struct Context {
    pub rel_tol: f64,
}

impl Context {
    fn precision(&self) -> Result<Precision> {
        Precision::new(self.rel_tol, 50_000_000).map_err(|e| UsageError(format!("--rel-tol: {e}")).into())
    }
}

/// A command's result before it is rendered.
pub struct Report {
    command: String,
    params: Value,
    values: Value,
    bounds: Value,
    seed: Option<SeedInfo>,
    pub text: String,
    pub ok: bool,
}

impl Report {
    fn new(command: &str, params: &impl Serialize) -> Self {
        Report {
            command: command.to_string(),
            params: serde_json::to_value(params).expect("serializable params"),
            values: Value::Object(Map::new()),
            bounds: Value::Object(Map::new()),
            seed: None,
            text: String::new(),
            ok: true,
        }
    }

    fn value(&mut self, key: &str, v: impl Into<Value>) {
        let v = v.into();
        let _ = writeln!(self.text, "{key}: {}", plain(&v));
        self.values[key] = v;
    }

    fn bounded(&mut self, key: &str, b: Bounded) {
        self.values[key] = json!(b.value);
        self.bounds[key] = json!(b.bound);
        let _ = writeln!(self.text, "{key}: {} ± {:.3e}", b.value, b.bound);
    }

    fn estimate(&mut self, key: &str, e: &MonteCarloEstimate) {
        self.values[key] = json!(e.mean);
        self.values["n_trials"] = json!(e.n_trials);
        self.bounds[key] = json!({ "std_err": e.std_err });
        self.seed = Some(SeedInfo::new(e.seed, e.streams));
        let _ = writeln!(self.text, "{key}: {} (std err {:.3e}, {} trials)", e.mean, e.std_err, e.n_trials);
    }

    pub fn into_envelope(self, wall_time: f64) -> OutputEnvelope {
        OutputEnvelope {
            schema_version: SCHEMA_VERSION,
            command: self.command,
            params: self.params,
            values: self.values,
            error_bounds: self.bounds,
            seed: self.seed,
            wall_time,
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    }
}

fn combo_json(c: &ZetaCombo) -> Value {
    let coeffs: Map<String, Value> = c.terms().map(|(j, a)| (j.to_string(), json!(rational_string(a)))).collect();
    json!({ "summary": combo_summary(c), "constant": rational_string(c.c0()), "zeta_coefficients": coeffs })
}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

fn plan(sim: &SimArgs) -> Result<SeedPlan> {
    if sim.trials == 0 || sim.streams == 0 {
        return Err(usage("--trials and --streams must be at least 1"));
    }
    Ok(SeedPlan::new(sim.seed, sim.streams))
}

pub fn dispatch(cmd: &Command, ctx: &Context) -> Result<Report> {
    match cmd {
        Command::Uk(a) => uk(a, ctx),
        Command::Verify(a) => verify(a),
        Command::Table(a) => table(a, ctx),
        Command::Mzv(MzvCommand::Eval(a)) => {
            let idx = MzvIndex::new(a.index.clone())?;
            let mut r = Report::new("mzv eval", a);
            let v = if a.star { mzv_star(&idx)? } else { mzv(&idx)? };
            r.bounded("value", v);
            r.value("weight", idx.weight());
            r.value("depth", idx.depth());
            Ok(r)
        }
        Command::Mzv(MzvCommand::Duality(a)) => {
            if a.k < 2 {
                return Err(usage("--k must be at least 2"));
            }
            let mut r = Report::new("mzv duality", a);
            let c = duality_check(a.k)?;
            r.value("lhs", c.lhs);
            r.value("rhs", c.rhs);
            r.value("residual", c.residual);
            r.bounds["residual"] = json!(c.budget);
            r.value("pass", c.pass);
            r.ok = c.pass;
            Ok(r)
        }
        Command::IdentitySuite => {
            let mut r = Report::new("identity-suite", &json!({}));
            checks_report(&mut r, &identity_suite()?);
            Ok(r)
        }
        Command::Simulate(s) => simulate(s),
        Command::Ukn(a) => ukn(a),
        Command::U2Limit(a) => u2(a),
    }
}

fn uk(a: &UkArgs, ctx: &Context) -> Result<Report> {
    let mut r = Report::new("uk", a);
    if a.mode == UkMode::Exact && !a.theta.is_one() {
        return Err(usage("--mode exact is only available for theta = 1"));
    }
    if a.k == 0 {
        r.value("exact", "1");
        r.bounded("value", Bounded::exact(1.0));
        return Ok(r);
    }
    match a.mode {
        UkMode::Exact => {
            let c = uk_closed(a.k);
            r.value("exact", combo_json(&c));
            r.text = format!("exact: {}\n", combo_summary(&c));
            r.bounded("value", c.eval()?);
        }
        UkMode::Series if a.theta.is_one() => r.bounded("value", uk_series(a.k, &ctx.precision()?)),
        UkMode::Series => r.bounded("value", uk_theta_series(a.k, a.theta.value)?),
        UkMode::Chain => r.bounded("value", uk_strict_path(a.k as usize, a.theta.value)?),
        UkMode::Simulate => {
            let p = plan(&a.sim)?;
            let exp = UkTrial { k: a.k as usize, theta: a.theta.value };
            let e = run_parallel(&exp, p, a.sim.trials).pmf_estimate(1, p);
            r.estimate("value", &e);
        }
    }
    Ok(r)
}

fn check_json(c: &Check) -> Value {
    json!({
        "name": c.name,
        "lhs": c.lhs,
        "rhs": c.rhs,
        "residual": c.residual,
        "budget": c.budget,
        "pass": c.pass,
    })
}

fn checks_report(r: &mut Report, checks: &[Check]) {
    let failed = checks.iter().filter(|c| !c.pass).count();
    r.values["checks"] = Value::Array(checks.iter().map(check_json).collect());
    r.values["passed"] = json!(checks.len() - failed);
    r.values["failed"] = json!(failed);
    r.bounds["max_residual"] = json!(max_residual(checks));
    for c in checks {
        let _ = writeln!(
            r.text,
            "{} {}  residual {:.3e}  budget {:.3e}",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.residual,
            c.budget
        );
    }
    let _ = writeln!(r.text, "{} passed, {failed} failed", checks.len() - failed);
    r.ok = all_pass(checks);
}

fn verify(a: &VerifyArgs) -> Result<Report> {
    let suite = Suite::parse(&a.suite)
        .ok_or_else(|| usage(format!("unknown suite {:?}; expected one of {}", a.suite, Suite::NAMES.join(", "))))?;
    let checks = if a.inject_sign_flip { run_suite_with(suite, &sign_flipped_closed)? } else { run_suite(suite)? };
    let mut r = Report::new("verify", a);
    checks_report(&mut r, &checks);
    Ok(r)
}

fn rows_csv(r: &mut Report, header: &[&str], rows: &[Vec<Value>]) {
    r.text.push_str(&header.join(","));
    r.text.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(plain).collect();
        r.text.push_str(&cells.join(","));
        r.text.push('\n');
    }
    let objs: Vec<Value> = rows
        .iter()
        .map(|row| Value::Object(header.iter().map(|h| h.to_string()).zip(row.iter().cloned()).collect()))
        .collect();
    r.values["rows"] = Value::Array(objs);
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| usage(format!("this table needs {flag}")))
}

fn table(a: &TableArgs, ctx: &Context) -> Result<Report> {
    let mut r = Report::new("table", a);
    match a.what {
        TableKind::Ck => {
            let k = need(a.k, "--k")?;
            let p = ChainParams::new(a.ell, a.theta.value)?;
            if a.ell == 1 && a.theta.is_one() && (1..=4).contains(&k) && a.n_max.is_none() {
                let row = ck11_table(k)?;
                let mut rows = Vec::new();
                let mut bounds = Vec::new();
                for (j, c) in row.iter().enumerate() {
                    let v = c.eval()?;
                    rows.push(vec![json!(j), json!(v.value), json!(combo_summary(c))]);
                    bounds.push(json!(v.bound));
                }
                rows_csv(&mut r, &["j", "p", "exact"], &rows);
                r.bounds["p"] = Value::Array(bounds);
            } else {
                let n = a.n_max.unwrap_or(100_000);
                let d = ck_pmf_dp(k as usize, p, n)?;
                let rows: Vec<Vec<Value>> = (0..=k as u64).map(|j| vec![json!(j), json!(d.get(j))]).collect();
                rows_csv(&mut r, &["j", "p"], &rows);
                r.bounds["truncation_mass"] = json!(d.truncation_mass);
                let _ = writeln!(r.text, "# truncation_mass {:e}", d.truncation_mass);
            }
        }
        TableKind::Qkdist => {
            let k = need(a.k, "--k")? as usize;
            let n = a.n_max.unwrap_or(50);
            let d = if a.ell == 1 && a.theta.is_one() {
                qk_dist(k, n)?
            } else {
                qk_dist_kernel(k, ChainParams::new(a.ell, a.theta.value)?, n)?
            };
            let rows: Vec<Vec<Value>> = (d.start..=n).map(|m| vec![json!(m), json!(d.get(m))]).collect();
            rows_csv(&mut r, &["n", "p"], &rows);
            r.bounds["truncation_mass"] = json!(d.truncation_mass);
            let _ = writeln!(r.text, "# truncation_mass {:e}", d.truncation_mass);
        }
        TableKind::Ukn => {
            let k = need(a.k, "--k")? as usize;
            let n_max = a.n_max.unwrap_or(8) as usize;
            let ew = Ewens::new(a.theta.exact.clone())?;
            let mut rows = Vec::new();
            for n in k.max(1)..=n_max {
                let v = if k == 2 && n >= 3 { u2n_formula(n, &ew)? } else { brute_force_ukn(k, n, &a.theta.exact)? };
                rows.push(vec![json!(n), json!(rational_string(&v)), json!(to_f64(&v))]);
            }
            rows_csv(&mut r, &["n", "exact", "value"], &rows);
        }
        TableKind::Renewal => {
            let q = QuadraticQ::from_coeffs(a.a, a.b, a.c)?;
            let u = quadratic_renewal_prec(&q, a.kmax, &ctx.precision()?)?;
            let uf: Vec<f64> = u.iter().map(|b| b.value).collect();
            let f = u_to_f(&uf, a.kmax)?;
            let rows: Vec<Vec<Value>> =
                (0..=a.kmax).map(|k| vec![json!(k), json!(u[k].value), json!(f[k])]).collect();
            rows_csv(&mut r, &["k", "u", "f"], &rows);
            r.bounds["u"] = Value::Array(u.iter().map(|b| json!(b.bound)).collect());
        }
    }
    Ok(r)
}

fn to_f64(v: &num_rational::BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::NAN)
}

fn chi_json(c: &ChiSquare, sigmas: f64) -> Value {
    json!({ "statistic": c.statistic, "df": c.df, "z": c.z, "pass": c.passes(sigmas) })
}

fn histogram_rows(r: &mut Report, exp: &dyn Experiment, p: SeedPlan, trials: u64, cats: usize) {
    let h = run_parallel(exp, p, trials);
    let mut rows = Vec::new();
    let mut errs = Vec::new();
    for j in 0..=cats {
        let e = h.pmf_estimate(j, p);
        rows.push(vec![json!(j), json!(e.mean)]);
        errs.push(json!(e.std_err));
    }
    rows_csv(r, &["j", "p"], &rows);
    r.bounds["std_err"] = Value::Array(errs);
    r.values["n_trials"] = json!(h.n());
    r.seed = Some(SeedInfo::new(p.master_seed, p.streams));
}

fn simulate(s: &SimCommand) -> Result<Report> {
    match s {
        SimCommand::Uk(a) => {
            let p = plan(&a.sim)?;
            if a.k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            let mut r = Report::new("simulate uk", a);
            let e = run_parallel(&UkTrial { k: a.k, theta: a.theta.value }, p, a.sim.trials).pmf_estimate(1, p);
            r.estimate("u_k", &e);
            Ok(r)
        }
        SimCommand::Ukn(a) => {
            let p = plan(&a.sim)?;
            if a.k == 0 || a.k > a.n {
                return Err(usage("need 1 <= k <= n"));
            }
            let mut r = Report::new("simulate ukn", a);
            let e = run_parallel(&UknTrial { k: a.k, n: a.n, theta: a.theta.value }, p, a.sim.trials).pmf_estimate(1, p);
            r.estimate("u_kn", &e);
            Ok(r)
        }
        SimCommand::Ck(a) => {
            let p = plan(&a.sim)?;
            if a.k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            let params = ChainParams::new(a.ell, a.theta.value)?;
            let mut r = Report::new("simulate ck", a);
            histogram_rows(&mut r, &CkTrial { k: a.k, params }, p, a.sim.trials, a.k);
            Ok(r)
        }
        SimCommand::Chain(a) => {
            let p = plan(&a.sim)?;
            let params = ChainParams::new(a.ell, a.theta.value)?;
            let mut r = Report::new("simulate chain", a);
            let two = chain_vs_records_test(params, a.sim.trials, p);
            let step = transition_test(a.ell, a.theta.value, a.sim.trials, p);
            r.value("chain_vs_records", chi_json(&two, a.sigmas));
            r.value("transition", chi_json(&step, a.sigmas));
            r.seed = Some(SeedInfo::new(p.master_seed, p.streams));
            r.ok = two.passes(a.sigmas) && step.passes(a.sigmas);
            Ok(r)
        }
        SimCommand::Engel(a) => {
            let p = plan(&a.sim)?;
            let mut r = Report::new("simulate engel", a);
            let t = engel_vs_chain_test(a.sim.trials, a.depth, p)?;
            r.value("engel_vs_chain", chi_json(&t, a.sigmas));
            r.seed = Some(SeedInfo::new(p.master_seed, p.streams));
            r.ok = t.passes(a.sigmas);
            Ok(r)
        }
    }
}

fn ukn(a: &UknArgs) -> Result<Report> {
    if a.k == 0 || a.k > a.n {
        return Err(usage("need 1 <= k <= n"));
    }
    let mut r = Report::new("ukn", a);
    if a.exact {
        let v = if a.k == 2 && a.n >= 3 {
            u2n_formula(a.n, &Ewens::new(a.theta.exact.clone())?)?
        } else {
            brute_force_ukn(a.k, a.n, &a.theta.exact)?
        };
        r.value("exact", rational_string(&v));
        r.bounded("value", Bounded::new(to_f64(&v), f64::EPSILON * to_f64(&v).abs()));
    } else {
        let p = plan(&a.sim)?;
        let e = run_parallel(&UknTrial { k: a.k, n: a.n, theta: a.theta.value }, p, a.sim.trials).pmf_estimate(1, p);
        r.estimate("value", &e);
    }
    Ok(r)
}

fn u2(a: &U2LimitArgs) -> Result<Report> {
    let mut r = Report::new("u2-limit", a);
    let l = u2_limit(a.theta.value)?;
    r.bounded("series", l.series);
    r.bounded("hypergeometric", l.hypergeometric);
    let d = l.series - l.hypergeometric;
    r.ok = d.value.abs() <= d.bound;
    Ok(r)
}
