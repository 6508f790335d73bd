//! `₃F₂(a₁,a₂,a₃; b₁,b₂; 1)` in the convergent regime.

use crate::asym::{Series, DEFAULT_LEN};
use crate::precision::{Bounded, Sum};
use crate::{Error, Result};

fn nonpositive_integer(x: f64) -> Option<u64> {
    if x <= 0.0 && libm::floor(x) == x {
        Some((-x) as u64)
    } else {
        None
    }
}

/// `Σ_{n≥0} (a₁)_n (a₂)_n (a₃)_n / ((b₁)_n (b₂)_n n!)`.
///
/// Terminating series (some `a_i` a non-positive integer) are summed exactly
/// in floating point. Otherwise the first `M` terms are summed directly and
/// the rest from the large-`n` expansion of the term ratio
/// `Γ(n+a₁)Γ(n+a₂)Γ(n+a₃) / (Γ(n+b₁)Γ(n+b₂)Γ(n+1))`, which decays like
/// `n^{−1−s}` with `s = b₁+b₂−a₁−a₂−a₃ > 0`.
pub fn hyp3f2_unit(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Result<Bounded> {
    let a = [a1, a2, a3];
    let b = [b1, b2];
    if a.iter().chain(b.iter()).any(|x| !x.is_finite()) {
        return Err(Error::domain("3F2 parameters must be finite"));
    }
    let term_end = a.iter().filter_map(|&x| nonpositive_integer(x)).min();
    if let Some(bad) = b.iter().filter_map(|&x| nonpositive_integer(x)).min() {
        if term_end.is_none_or(|m| m >= bad) {
            return Err(Error::domain("3F2 lower parameter hits a pole"));
        }
    }
    let step = |t: f64, n: f64| t * (a1 + n) * (a2 + n) * (a3 + n) / ((b1 + n) * (b2 + n) * (n + 1.0));
    if let Some(m) = term_end {
        let mut acc = Sum::new();
        let mut t = 1.0;
        for n in 0..=m {
            acc.add(t);
            t = step(t, n as f64);
        }
        let v = acc.value();
        return Ok(Bounded::new(v, acc.rounding_bound() + 2.0 * f64::EPSILON * v.abs()));
    }
    let s = b1 + b2 - a1 - a2 - a3;
    if !(s > 0.0) {
        return Err(Error::domain("3F2 at unit argument needs b1+b2-a1-a2-a3 > 0"));
    }
    let scale = a.iter().chain(b.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
    let m = libm::ceil((30.0 * scale).max(200.0)) as u64;
    let mut acc = Sum::new();
    let mut t = 1.0;
    for n in 0..m {
        acc.add(t);
        t = step(t, n as f64);
    }
    // t is now the n = M term.
    let ratio = Series::gamma_ratio(a1, b1, DEFAULT_LEN)
        .mul(&Series::gamma_ratio(a2, b2, DEFAULT_LEN))
        .mul(&Series::gamma_ratio(a3, 1.0, DEFAULT_LEN));
    let mf = m as f64;
    let at_m = ratio.eval_bounded(mf);
    let tail = ratio.tail_value(mf)?;
    let c = t / at_m.value;
    let tail_v = c * tail.value;
    let tail_b = c.abs() * tail.bound + tail_v.abs() * at_m.bound / at_m.value.abs();
    let v = acc.value() + tail_v;
    Ok(Bounded::new(v, tail_b + acc.rounding_bound() + 4.0 * f64::EPSILON * v.abs()))
}
