//! `rzeta`: exact values, tables, simulations and the verification suite.
//!
//! Exit codes: 0 success, 1 a check failed (or an I/O error), 2 usage error.

mod args;
mod commands;
mod driver;
mod envelope;

use args::Theta;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, Parser)]
#[command(name = "rzeta", version, about = "Renewal sequences, record chains and zeta sums")]
struct Cli {
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Relative tolerance for series and quadrature routes.
    #[arg(long, global = true, env = "RZETA_REL_TOL", default_value_t = 1e-13)]
    rel_tol: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// u_k by one of several routes.
    Uk(UkArgs),
    /// Run a verification suite; exit 1 if any check fails.
    Verify(VerifyArgs),
    /// Emit a table.
    Table(TableArgs),
    /// Multiple zeta values.
    #[command(subcommand)]
    Mzv(MzvCommand),
    /// Harmonic-sum and Euler-sum identities with residuals.
    IdentitySuite,
    /// Monte Carlo experiments.
    #[command(subcommand)]
    Simulate(SimCommand),
    /// u_{k:n} for random permutations.
    Ukn(UknArgs),
    /// lim u_{2:n} under Ewens(θ) by two routes.
    U2Limit(U2LimitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum UkMode {
    Exact,
    Series,
    Chain,
    Simulate,
}

#[derive(Debug, Args, Serialize)]
struct SimArgs {
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Independent generator streams, one worker thread each.
    #[arg(long, default_value_t = 4)]
    streams: u64,
}

#[derive(Debug, Args, Serialize)]
struct UkArgs {
    #[arg(long)]
    k: u32,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    #[arg(long, value_enum, default_value_t = UkMode::Exact)]
    mode: UkMode,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    /// all, zeta, renewal, chain, mzv or perm.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Replace the closed form by one with flipped ζ signs (must fail).
    #[arg(long, hide = true)]
    inject_sign_flip: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TableKind {
    Ck,
    Qkdist,
    Ukn,
    Renewal,
}

#[derive(Debug, Args, Serialize)]
struct TableArgs {
    #[arg(long, value_enum)]
    what: TableKind,
    #[arg(long)]
    k: Option<u32>,
    /// Truncation level (ck, qkdist) or largest n (ukn).
    #[arg(long)]
    n_max: Option<u64>,
    #[arg(long, default_value_t = 1)]
    ell: u64,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    #[arg(long, default_value_t = 0.5)]
    a: f64,
    #[arg(long, default_value_t = 1.5)]
    b: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value_t = 10)]
    kmax: usize,
}

#[derive(Debug, Subcommand)]
enum MzvCommand {
    /// ζ(s_1, …, s_d) with s_d ≥ 2, or ζ* with --star.
    Eval(MzvEvalArgs),
    /// ζ(1^{k−2}, 2) = ζ(k).
    Duality(MzvDualityArgs),
}

#[derive(Debug, Args, Serialize)]
struct MzvEvalArgs {
    /// Comma-separated index, e.g. 1,2.
    #[arg(long, value_delimiter = ',', required = true)]
    index: Vec<u32>,
    #[arg(long)]
    star: bool,
}

#[derive(Debug, Args, Serialize)]
struct MzvDualityArgs {
    #[arg(long)]
    k: u32,
}

#[derive(Debug, Subcommand)]
enum SimCommand {
    /// Estimate u_k(θ) by interval discovery.
    Uk(SimUkArgs),
    /// Estimate u_{k:n} from Ewens(θ) permutations.
    Ukn(SimUknArgs),
    /// Empirical law of C_k.
    Ck(SimCkArgs),
    /// Record chain against weak records, and one-step transitions.
    Chain(SimChainArgs),
    /// Engel digits of a uniform point against the chain path law.
    Engel(SimEngelArgs),
}

#[derive(Debug, Args, Serialize)]
struct SimUkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct SimUknArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct SimCkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    ell: u64,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct SimChainArgs {
    #[arg(long, default_value_t = 1)]
    ell: u64,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    /// Rejection threshold in standard deviations.
    #[arg(long, default_value_t = 3.0)]
    sigmas: f64,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct SimEngelArgs {
    #[arg(long, default_value_t = 2)]
    depth: usize,
    #[arg(long, default_value_t = 3.0)]
    sigmas: f64,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct UknArgs {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
    /// Exact rational by enumeration (or the u_{2:n} formula for k = 2).
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    sim: SimArgs,
}

#[derive(Debug, Args, Serialize)]
struct U2LimitArgs {
    #[arg(long, default_value_t = Theta::one())]
    theta: Theta,
}

/// Something the caller asked for that cannot be done as stated.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() || e.downcast_ref::<renewal_zeta::Error>().is_some() {
        2
    } else {
        1
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let ctx = commands::Context { rel_tol: cli.rel_tol };
    let report = match commands::dispatch(&cli.command, &ctx) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("rzeta: {e:#}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let wall_time = start.elapsed().as_secs_f64();
    let ok = report.ok;
    let body = if cli.json {
        let env = report.into_envelope(wall_time);
        serde_json::to_string_pretty(&env).expect("serializable") + "\n"
    } else {
        report.text
    };
    if let Err(e) = emit(&cli, &body) {
        eprintln!("rzeta: {e:#}");
        return ExitCode::from(1);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
