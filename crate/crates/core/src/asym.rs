//! Truncated asymptotic expansions `f(x) ~ Σ_p c_p x^{−σ−p}` for large `x`.
//!
//! Tails of the nested sums and of the unit-argument hypergeometric series are
//! built from these: products, shifts `x → x+δ`, and the Euler–Maclaurin tail
//! `Σ_{n≥0} f(x+n)`, all carried out coefficient-wise.

use crate::precision::{Bounded, Sum};
use crate::special::{bernoulli, bernoulli_poly, factorial, hurwitz_zeta};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// Default number of coefficients kept.
pub const DEFAULT_LEN: usize = 28;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub sigma: f64,
    pub coeffs: Vec<f64>,
}

impl Series {
    /// `x^{−σ}`.
    pub fn power(sigma: f64, len: usize) -> Self {
        let mut coeffs = vec![0.0; len];
        coeffs[0] = 1.0;
        Series { sigma, coeffs }
    }

    /// `1/(x+d) = Σ_p (−d)^p x^{−1−p}`.
    pub fn inv_shift(d: f64, len: usize) -> Self {
        let mut coeffs = Vec::with_capacity(len);
        let mut c = 1.0;
        for _ in 0..len {
            coeffs.push(c);
            c *= -d;
        }
        Series { sigma: 1.0, coeffs }
    }

    /// `Γ(x+a)/Γ(x+b)`, from
    /// `ln Γ(x+a) − ln Γ(x+b) ~ (a−b) ln x + Σ_k (−1)^{k+1} [B_{k+1}(a) − B_{k+1}(b)] / (k(k+1) x^k)`.
    pub fn gamma_ratio(a: f64, b: f64, len: usize) -> Self {
        assert!(len <= 59);
        let mut d = vec![0.0; len];
        for (k, dk) in d.iter_mut().enumerate().skip(1) {
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let diff = bernoulli_poly(k + 1, a) - bernoulli_poly(k + 1, b);
            *dk = sign * diff / (k * (k + 1)) as f64;
        }
        Series { sigma: b - a, coeffs: exp_series(&d) }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(mut self, c: f64) -> Self {
        for x in &mut self.coeffs {
            *x *= c;
        }
        self
    }

    pub fn mul(&self, o: &Series) -> Series {
        let len = self.len().min(o.len());
        let mut coeffs = vec![0.0; len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in o.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Series { sigma: self.sigma + o.sigma, coeffs }
    }

    /// `g(x) = f(x+δ)`, re-expanded in powers of `x`.
    pub fn shift(&self, delta: f64) -> Series {
        if delta == 0.0 {
            return self.clone();
        }
        let len = self.len();
        let mut coeffs = vec![0.0; len];
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let t = self.sigma + p as f64;
            // (x+δ)^{−t} = Σ_i (−1)^i (t)_i / i! δ^i x^{−t−i}
            let mut b = 1.0;
            for i in 0..len - p {
                coeffs[p + i] += c * b;
                b *= -(t + i as f64) * delta / (i + 1) as f64;
            }
        }
        Series { sigma: self.sigma, coeffs }
    }

    /// `T(x) = Σ_{n≥0} f(x+n)`, valid for `σ > 1`; the result has exponent `σ−1`.
    pub fn tail_series(&self) -> Result<Series> {
        if !(self.sigma > 1.0) {
            return Err(Error::domain("tail of a series with sigma <= 1 diverges"));
        }
        let len = self.len();
        let mut coeffs = vec![0.0; len];
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let s = self.sigma + p as f64;
            coeffs[p] += c / (s - 1.0);
            if p + 1 < len {
                coeffs[p + 1] += 0.5 * c;
            }
            // Σ_j B_{2j}/(2j)! (s)_{2j−1} x^{1−s−2j}
            let mut poch = s;
            let mut j = 1;
            while p + 2 * j < len {
                coeffs[p + 2 * j] += c * bernoulli(2 * j) / factorial(2 * j) * poch;
                poch *= (s + (2 * j - 1) as f64) * (s + (2 * j) as f64);
                j += 1;
            }
        }
        Ok(Series { sigma: self.sigma - 1.0, coeffs })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let inv = 1.0 / x;
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * inv + c;
        }
        acc * libm::pow(x, -self.sigma)
    }

    /// Magnitude of the last two retained terms at `x`, used as the
    /// truncation estimate of the expansion.
    pub fn truncation(&self, x: f64) -> f64 {
        let n = self.len();
        let term = |p: usize| self.coeffs[p].abs() * libm::pow(x, -self.sigma - p as f64);
        match n {
            0 => 0.0,
            1 => term(0),
            _ => term(n - 1).max(term(n - 2)),
        }
    }

    /// `eval` together with the truncation estimate.
    pub fn eval_bounded(&self, x: f64) -> Bounded {
        let v = self.eval(x);
        Bounded::new(v, self.truncation(x) + 4.0 * f64::EPSILON * v.abs())
    }

    /// `Σ_{n≥0} f(x+n) = Σ_p c_p ζ(σ+p, x)`, term by term through Hurwitz ζ.
    pub fn tail_value(&self, x: f64) -> Result<Bounded> {
        if !(self.sigma > 1.0) {
            return Err(Error::domain("tail of a series with sigma <= 1 diverges"));
        }
        let mut acc = Sum::new();
        let mut err = 0.0;
        let mut last = 0.0;
        for (p, &c) in self.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let z = hurwitz_zeta(self.sigma + p as f64, x)?;
            acc.add(c * z.value);
            err += c.abs() * z.bound;
            last = (c * z.value).abs();
        }
        let v = acc.value();
        Ok(Bounded::new(v, err + last + acc.rounding_bound()))
    }
}

/// Coefficients of `exp(Σ_{k≥1} d_k t^k)` given `d` (with `d[0]` ignored).
fn exp_series(d: &[f64]) -> Vec<f64> {
    let len = d.len();
    let mut e = vec![0.0; len];
    if len == 0 {
        return e;
    }
    e[0] = 1.0;
    for j in 1..len {
        let mut s = 0.0;
        for k in 1..=j {
            s += k as f64 * d[k] * e[j - k];
        }
        e[j] = s / j as f64;
    }
    e
}
