//! Hurwitz/Riemann ζ, log-gamma and the polygamma family.
//!
//! All evaluators shift the argument upward with the exact recurrence until
//! it is large enough for the Euler–Maclaurin (ζ) or Stirling-type (ψ, lnΓ)
//! asymptotic series, and report the first omitted asymptotic term plus a
//! rounding allowance as the error bound.

use super::bernoulli::{factorial, B_EVEN};
use crate::precision::{Bounded, Sum};
use crate::{Error, Result};
use core::f64::consts::PI;

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && libm::floor(x) == x
}

/// Hurwitz zeta `ζ(s, x) = Σ_{n≥0} (x+n)^{−s}` for real `s > 1`, `x > 0`.
pub fn hurwitz_zeta(s: f64, x: f64) -> Result<Bounded> {
    if !(s > 1.0) {
        return Err(Error::domain("Hurwitz zeta needs s > 1"));
    }
    if !(x > 0.0) {
        return Err(Error::domain("Hurwitz zeta needs x > 0"));
    }
    let target = if s > 12.0 { s } else { 12.0 };
    let mut sum = Sum::new();
    let mut xx = x;
    while xx < target {
        sum.add(libm::pow(xx, -s));
        xx += 1.0;
    }
    let big = xx;
    let lead = libm::pow(big, 1.0 - s);
    sum.add(lead / (s - 1.0));
    sum.add(0.5 * lead / big);
    // Σ_j B_{2j}/(2j)! (s)_{2j−1} X^{1−s−2j}
    let inv2 = 1.0 / (big * big);
    let mut poch = s; // (s)_{2j−1}, starts at j=1: (s)_1 = s
    let mut pw = lead / big; // X^{−s}
    let mut j = 1;
    let bound = loop {
        let term = B_EVEN[j] / factorial(2 * j) * poch * pw / big;
        if j >= 29 || term.abs() < 1e-18 * sum.value().abs() {
            break term.abs();
        }
        sum.add(term);
        poch *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
        pw *= inv2;
        j += 1;
    };
    let v = sum.value();
    Ok(Bounded::new(v, bound + sum.rounding_bound() + 2.0 * f64::EPSILON * v.abs()))
}

/// `ζ(k)` for integer `k ≥ 2`.
pub fn zeta_int(k: i64) -> Result<Bounded> {
    if k <= 1 {
        return Err(Error::domain("zeta(k) diverges for k <= 1"));
    }
    hurwitz_zeta(k as f64, 1.0)
}

/// `ζ(k) − 1 = Σ_{n≥2} n^{−k}`, computed without cancellation.
pub fn zeta_minus_one(k: i64) -> Result<Bounded> {
    if k <= 1 {
        return Err(Error::domain("zeta(k) diverges for k <= 1"));
    }
    hurwitz_zeta(k as f64, 2.0)
}

/// Digamma `ψ(x) = Γ′(x)/Γ(x)`.
pub fn digamma(x: f64) -> Result<Bounded> {
    if is_nonpositive_integer(x) || !x.is_finite() {
        return Err(Error::domain("digamma has poles at 0, -1, -2, ..."));
    }
    if x < 0.0 {
        // ψ(x) = ψ(1−x) − π cot(πx)
        let r = digamma(1.0 - x)?;
        let c = PI / libm::tan(PI * x);
        let v = r.value - c;
        return Ok(Bounded::new(v, r.bound + 4.0 * f64::EPSILON * (c.abs() + v.abs())));
    }
    let mut acc = Sum::new();
    let mut z = x;
    while z < 10.0 {
        acc.add(-1.0 / z);
        z += 1.0;
    }
    acc.add(libm::log(z));
    acc.add(-0.5 / z);
    let inv2 = 1.0 / (z * z);
    let mut pw = inv2;
    for j in 1..=10 {
        acc.add(-B_EVEN[j] / (2 * j) as f64 * pw);
        pw *= inv2;
    }
    let omitted = (B_EVEN[11] / 22.0 * pw).abs();
    let v = acc.value();
    Ok(Bounded::new(v, omitted + acc.rounding_bound() + 2.0 * f64::EPSILON * v.abs()))
}

/// Polygamma `ψ^{(m)}(x)`; `m = 0` is the digamma function.
pub fn polygamma(m: u32, x: f64) -> Result<Bounded> {
    if m == 0 {
        return digamma(x);
    }
    if is_nonpositive_integer(x) || !x.is_finite() {
        return Err(Error::domain("polygamma has poles at 0, -1, -2, ..."));
    }
    let mf = factorial(m as usize);
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 }; // (−1)^{m+1}
    if x > 0.0 {
        return Ok(hurwitz_zeta(m as f64 + 1.0, x)?.scale(sign * mf));
    }
    // ψ^{(m)}(x) = ψ^{(m)}(x+1) − (−1)^m m!/x^{m+1}, shifted into x > 0.
    let mut corr = Sum::new();
    let mut z = x;
    while z < 0.0 {
        corr.add(sign * mf * libm::pow(z, -(m as f64) - 1.0));
        z += 1.0;
    }
    let base = hurwitz_zeta(m as f64 + 1.0, z)?.scale(sign * mf);
    let v = base.value + corr.value();
    Ok(Bounded::new(v, base.bound + corr.rounding_bound() + 2.0 * f64::EPSILON * v.abs()))
}

/// `ln Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<Bounded> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("ln_gamma implemented for x > 0"));
    }
    let mut z = x;
    let mut prod = 1.0;
    let mut logs = Sum::new();
    while z < 15.0 {
        prod *= z;
        if !(1e-280..=1e280).contains(&prod) {
            logs.add(libm::log(prod));
            prod = 1.0;
        }
        z += 1.0;
    }
    logs.add(libm::log(prod));
    let mut acc = Sum::new();
    acc.add((z - 0.5) * libm::log(z));
    acc.add(-z);
    acc.add(0.5 * libm::log(2.0 * PI));
    let inv2 = 1.0 / (z * z);
    let mut pw = 1.0 / z;
    for j in 1..=10 {
        let n = (2 * j) as f64;
        acc.add(B_EVEN[j] / (n * (n - 1.0)) * pw);
        pw *= inv2;
    }
    let omitted = (B_EVEN[11] / (22.0 * 21.0) * pw).abs();
    let v = acc.value() - logs.value();
    let bound = omitted
        + acc.rounding_bound()
        + logs.rounding_bound()
        + 4.0 * f64::EPSILON * (v.abs() + z * libm::log(z).abs());
    Ok(Bounded::new(v, bound))
}

/// `Γ(x)` for `x > 0`.
pub fn gamma(x: f64) -> Result<Bounded> {
    let l = ln_gamma(x)?;
    let v = libm::exp(l.value);
    Ok(Bounded::new(v, v * (libm::expm1(l.bound)) + f64::EPSILON * v))
}

/// `ln[Γ(x+a)/Γ(x+b)]` for `x+a, x+b > 0`.
pub fn ln_gamma_ratio(x: f64, a: f64, b: f64) -> Result<f64> {
    Ok(ln_gamma(x + a)?.value - ln_gamma(x + b)?.value)
}

/// Rising factorial `(x)_n = x(x+1)⋯(x+n−1)` in floating point.
pub fn pochhammer(x: f64, n: u64) -> f64 {
    (0..n).fold(1.0, |acc, i| acc * (x + i as f64))
}
