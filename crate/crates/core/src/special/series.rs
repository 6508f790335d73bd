//! ζ generating function, Dirichlet β, polylogarithm and complete Bell
//! polynomials.

use super::bernoulli::{bernoulli, factorial};
use super::gamma::{digamma, zeta_int, EULER_GAMMA};
use crate::precision::{Bounded, Sum};
use crate::scalar::Scalar;
use crate::{Error, Result};
use alloc::vec::Vec;

/// `G(z) = Σ_{n≥2} ζ(n) zⁿ = −z(γ + ψ(1−z))` for `|z| < 1`.
pub fn zeta_gf(z: f64) -> Result<Bounded> {
    if !(z.abs() < 1.0) {
        return Err(Error::domain("zeta generating function needs |z| < 1"));
    }
    if z == 0.0 {
        return Ok(Bounded::exact(0.0));
    }
    let p = digamma(1.0 - z)?;
    let inner = EULER_GAMMA + p.value;
    let v = -z * inner;
    let b = z.abs() * (p.bound + 2.0 * f64::EPSILON * (EULER_GAMMA + p.value.abs()));
    Ok(Bounded::new(v, b + f64::EPSILON * v.abs()))
}

/// Dirichlet `β(s) = Σ_{n≥0} (−1)ⁿ (2n+1)^{−s}` for `s > 0`.
///
/// The alternating series is accelerated with the Cohen–Rodriguez
/// Villegas–Zagier weights, whose error is at most `2 a₀ / (3+√8)ⁿ` for
/// totally monotone terms such as these.
pub fn dirichlet_beta(s: f64) -> Result<Bounded> {
    if !(s > 0.0) {
        return Err(Error::domain("Dirichlet beta needs s > 0"));
    }
    let n = 26usize;
    let base = 3.0 + libm::sqrt(8.0);
    let mut d = libm::pow(base, n as f64);
    d = 0.5 * (d + 1.0 / d);
    let mut b = -1.0;
    let mut c = -d;
    let mut acc = Sum::new();
    for k in 0..n {
        c = b - c;
        acc.add(c * libm::pow((2 * k + 1) as f64, -s));
        let kf = k as f64;
        let nf = n as f64;
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    let v = acc.value() / d;
    let bound = 2.0 / libm::pow(base, n as f64) + acc.rounding_bound() / d + 4.0 * f64::EPSILON * v;
    Ok(Bounded::new(v, bound))
}

/// Partial sum of the first `terms` terms of `β(s)` with the alternating
/// remainder bound (the first omitted term).
pub fn dirichlet_beta_partial(s: f64, terms: usize) -> Result<Bounded> {
    if !(s > 0.0) {
        return Err(Error::domain("Dirichlet beta needs s > 0"));
    }
    if terms == 0 {
        return Err(Error::domain("need at least one term"));
    }
    let mut acc = Sum::new();
    for n in (0..terms).rev() {
        let t = libm::pow((2 * n + 1) as f64, -s);
        acc.add(if n % 2 == 0 { t } else { -t });
    }
    let omitted = libm::pow((2 * terms + 1) as f64, -s);
    Ok(Bounded::new(acc.value(), omitted + acc.rounding_bound()))
}

/// Catalan's constant `G = β(2)`.
pub fn catalan() -> Bounded {
    dirichlet_beta(2.0).expect("beta(2) is in the domain")
}

/// `ζ(n)` for any integer `n ≠ 1`, including `ζ(0) = −1/2` and
/// `ζ(−n) = (−1)ⁿ B_{n+1}/(n+1)`.
fn zeta_any(n: i64) -> Result<f64> {
    if n >= 2 {
        return Ok(zeta_int(n)?.value);
    }
    if n == 1 {
        return Err(Error::domain("zeta pole at 1"));
    }
    let m = (-n) as usize;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * bernoulli(m + 1) / (m + 1) as f64)
}

/// Polylogarithm `Li_m(z) = Σ_{n≥1} zⁿ/n^m` for integer `m ≥ 1`, `0 ≤ z < 1`.
pub fn polylog(m: u32, z: f64) -> Result<Bounded> {
    if m == 0 {
        return Err(Error::domain("polylog order must be >= 1"));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("polylog needs 0 <= z < 1"));
    }
    if z == 0.0 {
        return Ok(Bounded::exact(0.0));
    }
    if m == 1 {
        let v = -libm::log1p(-z);
        return Ok(Bounded::new(v, 2.0 * f64::EPSILON * v.abs()));
    }
    let mf = m as f64;
    if z <= 0.5 {
        let mut acc = Sum::new();
        let mut zn = z;
        let mut n = 1u32;
        loop {
            let t = zn / libm::pow(n as f64, mf);
            if t < 1e-18 * acc.value() {
                let tail = t / (1.0 - z);
                let v = acc.value();
                return Ok(Bounded::new(v, tail + acc.rounding_bound() + f64::EPSILON * v));
            }
            acc.add(t);
            zn *= z;
            n += 1;
        }
    }
    // Expansion in μ = ln z around z = 1:
    // Li_m(e^μ) = Σ_{k≠m−1} ζ(m−k) μᵏ/k! + μ^{m−1}/(m−1)! (H_{m−1} − ln(−μ)).
    let mu = libm::log(z);
    let mut acc = Sum::new();
    let mut pw = 1.0; // μᵏ/k!
    let kmax = m as usize + 40;
    let mut last = 0.0;
    for k in 0..=kmax {
        if k == m as usize - 1 {
            let h: f64 = (1..m).map(|j| 1.0 / j as f64).sum();
            acc.add(pw * (h - libm::log(-mu)));
        } else {
            let t = zeta_any(m as i64 - k as i64)? * pw;
            acc.add(t);
            if t != 0.0 {
                last = t;
            }
        }
        pw *= mu / (k + 1) as f64;
    }
    let v = acc.value();
    let bound = last.abs() + acc.rounding_bound() + 4.0 * f64::EPSILON * v.abs();
    Ok(Bounded::new(v, bound))
}

/// Complete Bell polynomial `P_k(x₁,…,x_k)` via
/// `P_k = Σ_j C(k−1, j−1) x_j P_{k−j}`, `P₀ = 1`.
pub fn bell_complete<T: Scalar>(x: &[T]) -> Result<T> {
    if x.is_empty() {
        return Err(Error::domain("Bell polynomial needs k >= 1"));
    }
    Ok(bell_all(x).pop().expect("nonempty"))
}

/// `[P_0, P_1, …, P_k]` for the given arguments.
pub fn bell_all<T: Scalar>(x: &[T]) -> Vec<T> {
    let k = x.len();
    let mut p: Vec<T> = Vec::with_capacity(k + 1);
    p.push(T::one());
    for n in 1..=k {
        let mut s = T::zero();
        let mut binom = T::one(); // C(n−1, j−1)
        for j in 1..=n {
            s = s + binom.clone() * x[j - 1].clone() * p[n - j].clone();
            binom = binom * T::from_i64((n - j) as i64) / T::from_i64(j as i64);
        }
        p.push(s);
    }
    p
}

/// `[P_0/0!, P_1/1!, …, P_k/k!]`, via `b_n = (1/n) Σ_j x_j/(j−1)! b_{n−j}`.
/// Avoids the factorial overflow of [`bell_all`] in floating point.
pub fn bell_scaled(x: &[f64]) -> Vec<f64> {
    let k = x.len();
    let mut b = Vec::with_capacity(k + 1);
    b.push(1.0);
    for n in 1..=k {
        let mut s = Sum::new();
        for j in 1..=n {
            s.add(x[j - 1] / factorial(j - 1) * b[n - j]);
        }
        b.push(s.value() / n as f64);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;
    use core::f64::consts::{LN_2, PI};
    use num_rational::BigRational;

    #[test]
    fn zeta_gf_matches_truncated_double_sum() {
        for &z in &[0.5, -0.5, 0.1, -0.1, 0.9, -0.9] {
            // Oracle: Σ_{n≥2} zⁿ Σ_{m≥1} m^{−n}, swapped into Σ_m z²/(m(m−z)),
            // summed directly with a bracketed tail.
            let mut s = Sum::new();
            let big = 2_000_000u64;
            for m in 1..=big {
                let mf = m as f64;
                s.add(z * z / (mf * (mf - z)));
            }
            let tail = z * z / big as f64;
            let oracle = s.value() + tail;
            let g = zeta_gf(z).unwrap();
            assert!((g.value - oracle).abs() < 1e-11, "z={z}: {} vs {}", g.value, oracle);
        }
        assert_eq!(zeta_gf(0.0).unwrap().value, 0.0);
        assert!(zeta_gf(1.0).is_err());
    }

    #[test]
    fn zeta_gf_half_values() {
        // −½(γ + ψ(½)) = ln 2
        let g = zeta_gf(0.5).unwrap().value;
        assert!((g - LN_2).abs() < 1e-15);
        let psi32 = 2.0 - EULER_GAMMA - 2.0 * LN_2;
        let expect = 0.5 * (EULER_GAMMA + psi32);
        assert!((zeta_gf(-0.5).unwrap().value - expect).abs() < 1e-15);
    }

    #[test]
    fn beta_values() {
        // Leibniz oracle with alternating-remainder averaging.
        let n = 1_000_000usize;
        let p = dirichlet_beta_partial(1.0, n).unwrap();
        let q = dirichlet_beta_partial(1.0, n + 1).unwrap();
        let leibniz = 0.5 * (p.value + q.value);
        let b1 = dirichlet_beta(1.0).unwrap();
        assert!((b1.value - PI / 4.0).abs() < 1e-15);
        assert!((b1.value - leibniz).abs() < 1e-12);
        let g = catalan();
        assert!((g.value - 0.915_965_594_177_219).abs() < 1e-15);
        assert!(g.bound < 1e-14, "{}", g.bound);
        let one = dirichlet_beta_partial(2.0, 1).unwrap();
        assert_eq!(one.value, 1.0);
        assert!(one.bound >= 1.0 / 9.0);
        assert!(dirichlet_beta(0.0).is_err());
    }

    #[test]
    fn polylog_values() {
        let t = 0.7;
        let v = polylog(1, 1.0 - libm::exp(-t)).unwrap().value;
        assert!((v - t).abs() < 1e-15);
        assert_eq!(polylog(3, 0.0).unwrap().value, 0.0);
        // Li₂(1/2) = π²/12 − ln²2/2
        let li2 = PI * PI / 12.0 - 0.5 * LN_2 * LN_2;
        assert!((polylog(2, 0.5).unwrap().value - li2).abs() < 1e-15);
        assert!(polylog(2, 1.0).is_err());
        assert!(polylog(2, -0.1).is_err());
    }

    #[test]
    fn polylog_branches_agree_with_direct_sum() {
        for m in 2..7u32 {
            for &z in &[0.3, 0.5, 0.51, 0.75, 0.95] {
                let mut s = Sum::new();
                let mut zn = z;
                for n in 1..20_000 {
                    s.add(zn / libm::pow(n as f64, m as f64));
                    zn *= z;
                }
                let v = polylog(m, z).unwrap();
                assert!((v.value - s.value()).abs() < 1e-14, "m={m} z={z}");
            }
        }
    }

    #[test]
    fn bell_small_cases() {
        let v = bell_complete(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(v, rat_int(7));
        let v = bell_complete(&[rat_int(1), rat_int(1), rat_int(1)]).unwrap();
        assert_eq!(v, rat_int(5));
        let v: BigRational =
            bell_complete(&[rat_int(1), rat_int(0), rat_int(0), rat_int(0), rat_int(0)]).unwrap();
        assert_eq!(v, rat_int(1));
        assert!(bell_complete::<f64>(&[]).is_err());
    }

    #[test]
    fn scaled_bell_matches_unscaled() {
        let x = [0.3, -1.2, 2.5, 0.7, -0.1, 4.0];
        let p = bell_all(&x);
        let b = bell_scaled(&x);
        for k in 0..=x.len() {
            assert!((p[k] / factorial(k) - b[k]).abs() < 1e-12 * (1.0 + b[k].abs()));
        }
    }
}
