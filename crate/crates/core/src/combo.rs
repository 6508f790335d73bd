//! Exact rational combinations `c₀ + Σ_j c_j ζ(j)` and the renewal sequence
//! `u_k` of the GEM(1) stick-breaking example.

use crate::precision::{Bounded, Precision, Sum};
use crate::scalar::{rat, rat_to_f64};
use crate::special::{digamma, zeta_minus_one, EULER_GAMMA};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `c0 + Σ_{j≥2} c[j]·ζ(j)` with exact rational coefficients. Zero
/// coefficients are never stored, so derived equality is coefficient-wise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZetaCombo {
    c0: BigRational,
    c: BTreeMap<u32, BigRational>,
}

impl ZetaCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c0: BigRational) -> Self {
        ZetaCombo { c0, c: BTreeMap::new() }
    }

    /// `ζ(j)` as a basis element; `j = 1` (and below) is rejected.
    pub fn zeta(j: u32) -> Result<Self> {
        Self::term(j, BigRational::one())
    }

    /// `coeff · ζ(j)`.
    pub fn term(j: u32, coeff: BigRational) -> Result<Self> {
        if j < 2 {
            return Err(Error::domain("zeta(1) diverges and is not a basis element"));
        }
        let mut z = Self::zero();
        z.add_term(j, coeff);
        Ok(z)
    }

    /// Build from parts, dropping zero coefficients.
    pub fn from_parts(
        c0: BigRational,
        terms: impl IntoIterator<Item = (u32, BigRational)>,
    ) -> Result<Self> {
        let mut z = Self::constant(c0);
        for (j, c) in terms {
            if j < 2 {
                return Err(Error::domain("zeta(1) diverges and is not a basis element"));
            }
            z.add_term(j, c);
        }
        Ok(z)
    }

    fn add_term(&mut self, j: u32, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let e = self.c.entry(j).or_insert_with(BigRational::zero);
        *e += coeff;
        if e.is_zero() {
            self.c.remove(&j);
        }
    }

    pub fn c0(&self) -> &BigRational {
        &self.c0
    }

    /// Coefficient of `ζ(j)` (zero when absent).
    pub fn coeff(&self, j: u32) -> BigRational {
        self.c.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Non-zero `(j, c_j)` pairs in increasing `j`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.c.iter().map(|(j, c)| (*j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c.is_empty()
    }

    pub fn max_index(&self) -> Option<u32> {
        self.c.keys().next_back().copied()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        ZetaCombo {
            c0: &self.c0 * r,
            c: self.c.iter().map(|(j, c)| (*j, c * r)).collect(),
        }
    }

    /// Numerical value, written as `(c₀ + Σ c_j) + Σ c_j (ζ(j) − 1)` to
    /// limit cancellation between large coefficients.
    pub fn eval(&self) -> Result<Bounded> {
        let mut constant = self.c0.clone();
        let mut acc = Sum::new();
        let mut err = 0.0;
        for (&j, c) in &self.c {
            constant += c;
            let z = zeta_minus_one(j as i64)?;
            let cf = rat_to_f64(c);
            acc.add(cf * z.value);
            err += cf.abs() * z.bound + 2.0 * f64::EPSILON * (cf * z.value).abs();
        }
        let c = rat_to_f64(&constant);
        acc.add(c);
        let v = acc.value();
        Ok(Bounded::new(v, err + acc.rounding_bound() + f64::EPSILON * (c.abs() + v.abs())))
    }
}

impl Add<&ZetaCombo> for &ZetaCombo {
    type Output = ZetaCombo;
    fn add(self, o: &ZetaCombo) -> ZetaCombo {
        let mut r = self.clone();
        r.c0 += &o.c0;
        for (j, c) in &o.c {
            r.add_term(*j, c.clone());
        }
        r
    }
}

impl Add for ZetaCombo {
    type Output = ZetaCombo;
    fn add(self, o: ZetaCombo) -> ZetaCombo {
        &self + &o
    }
}

impl Neg for &ZetaCombo {
    type Output = ZetaCombo;
    fn neg(self) -> ZetaCombo {
        ZetaCombo { c0: -&self.c0, c: self.c.iter().map(|(j, c)| (*j, -c)).collect() }
    }
}

impl Neg for ZetaCombo {
    type Output = ZetaCombo;
    fn neg(self) -> ZetaCombo {
        -&self
    }
}

impl Sub<&ZetaCombo> for &ZetaCombo {
    type Output = ZetaCombo;
    fn sub(self, o: &ZetaCombo) -> ZetaCombo {
        self + &(-o)
    }
}

impl Sub for ZetaCombo {
    type Output = ZetaCombo;
    fn sub(self, o: ZetaCombo) -> ZetaCombo {
        &self - &o
    }
}

impl Mul<&BigRational> for &ZetaCombo {
    type Output = ZetaCombo;
    fn mul(self, r: &BigRational) -> ZetaCombo {
        self.scale(r)
    }
}

impl fmt::Display for ZetaCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.c0.is_zero() || self.c.is_empty() {
            write!(f, "{}", self.c0)?;
            first = false;
        }
        for (j, c) in &self.c {
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if mag.is_one() {
                write!(f, "ζ({j})")?;
            } else {
                write!(f, "{mag}·ζ({j})")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Value carried both exactly (when known) and numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct RenewalValue {
    pub exact: Option<ZetaCombo>,
    pub numeric: f64,
    pub tail_bound: f64,
}

impl RenewalValue {
    pub fn from_exact(c: ZetaCombo) -> Result<Self> {
        let b = c.eval()?;
        Ok(RenewalValue { exact: Some(c), numeric: b.value, tail_bound: b.bound })
    }

    pub fn from_numeric(b: Bounded) -> Self {
        RenewalValue { exact: None, numeric: b.value, tail_bound: b.bound }
    }

    pub fn bounded(&self) -> Bounded {
        Bounded::new(self.numeric, self.tail_bound)
    }
}

fn pow2(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << n as usize)
}

/// `u_k` from `2u_k + 3u_{k−1} + u_{k−2} = 2ζ(k)`, `u₀ = 1`, `u₁ = 1/2`.
pub fn uk_recursion(k: u32) -> ZetaCombo {
    uk_recursion_all(k).pop().expect("nonempty")
}

/// `[u_0, …, u_k]` from the recursion.
pub fn uk_recursion_all(k: u32) -> alloc::vec::Vec<ZetaCombo> {
    let mut u = alloc::vec![ZetaCombo::constant(rat(1, 1))];
    if k >= 1 {
        u.push(ZetaCombo::constant(rat(1, 2)));
    }
    let half = rat(1, 2);
    let three_halves = rat(3, 2);
    for j in 2..=k {
        let n = j as usize;
        let z = ZetaCombo::zeta(j).expect("j >= 2");
        let next = &(&z - &u[n - 1].scale(&three_halves)) - &u[n - 2].scale(&half);
        u.push(next);
    }
    u
}

/// `u_k = (−1)^{k−1}(2 − 3/2^k) + Σ_{j=2}^k (−1)^{k−j}(2 − 1/2^{k−j}) ζ(j)`.
pub fn uk_closed(k: u32) -> ZetaCombo {
    let two = rat(2, 1);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { rat(1, 1) } else { rat(-1, 1) };
    let c0 = sign(k as i64 - 1) * (&two - rat(3, 1) / pow2(k));
    let terms = (2..=k).map(|j| (j, sign((k - j) as i64) * (&two - rat(1, 1) / pow2(k - j))));
    ZetaCombo::from_parts(c0, terms).expect("indices >= 2")
}

/// `u_k = Σ_{j≥1} 2/(j^k (j+1)(j+2))`, summed to `N` terms with the tail
/// bracketed by `∫_{N+1}^∞ 2(x+2)^{−k−2} ≤ tail ≤ ∫_N^∞ 2x^{−k−2}`.
pub fn uk_series(k: u32, prec: &Precision) -> Bounded {
    let kk = (k + 2) as f64;
    let want = libm::ceil(libm::pow(6.0 / prec.rel_tol, 1.0 / kk));
    let n = (want.max(1.0) as usize).min(prec.max_terms).max(1);
    uk_series_terms(k, n)
}

/// [`uk_series`] with an explicit number of direct terms.
pub fn uk_series_terms(k: u32, n: usize) -> Bounded {
    let mut acc = Sum::new();
    for j in (1..=n).rev() {
        let jf = j as f64;
        acc.add(2.0 * libm::pow(jf, -(k as f64)) / ((jf + 1.0) * (jf + 2.0)));
    }
    let nf = n as f64;
    let k1 = (k + 1) as f64;
    let lo = 2.0 / (k1 * libm::pow(nf + 3.0, k1));
    let hi = 2.0 / (k1 * libm::pow(nf, k1));
    let v = acc.value() + 0.5 * (lo + hi);
    Bounded::new(v, 0.5 * (hi - lo) + acc.rounding_bound() + f64::EPSILON * v)
}

/// `U(z) = Σ u_k z^k = 2/((1+z)(2+z)) · [1 + (2 − γ − ψ(1−z)) z]`.
pub fn uk_genfun(z: f64) -> Result<Bounded> {
    if !(z.abs() < 1.0) {
        return Err(Error::domain("generating function needs |z| < 1"));
    }
    let p = digamma(1.0 - z)?;
    let pre = 2.0 / ((1.0 + z) * (2.0 + z));
    let inner = 1.0 + (2.0 - EULER_GAMMA - p.value) * z;
    let v = pre * inner;
    let b = pre * z.abs() * p.bound + 4.0 * f64::EPSILON * (v.abs() + pre * z.abs() * p.value.abs());
    Ok(Bounded::new(v, b))
}

/// Decimal-free rendering used by tests and the CLI.
/// ASCII rendering with ζ terms first and the constant last,
/// e.g. `zeta(2) - 5/4`.
pub fn combo_summary(c: &ZetaCombo) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let push = |out: &mut String, coeff: &BigRational, body: Option<u32>| {
        let neg = coeff.is_negative();
        let mag = if neg { -coeff } else { coeff.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match body {
            Some(j) if mag.is_one() => write!(out, "zeta({j})"),
            Some(j) => write!(out, "{mag}*zeta({j})"),
            None => write!(out, "{mag}"),
        }
        .expect("writing to a String");
    };
    for (j, a) in c.terms() {
        push(&mut out, a, Some(j));
    }
    if !c.c0().is_zero() || out.is_empty() {
        push(&mut out, c.c0(), None);
    }
    out
}
