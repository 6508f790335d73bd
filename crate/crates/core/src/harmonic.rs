//! Iterated harmonic sums, multiple zeta and multiple Hurwitz zeta values,
//! Euler sums, and the identities connecting them.

use crate::asym::{Series, DEFAULT_LEN};
use crate::combo::ZetaCombo;
use crate::nested::{NestedSum, Weight};
use crate::precision::{Bounded, Sum};
use crate::record::inv_moment_qk;
use crate::scalar::{rat, rat_to_f64};
use crate::special::{bernoulli, factorial, gamma, polylog, zeta_int, zeta_minus_one, EULER_GAMMA};
use crate::verify::Check;
use crate::{Error, Result};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `H*_k(n) = Σ_{m≤n} H*_{k−1}(m)/m` with `H*_{−1} ≡ 0`, `H*_0 ≡ 1`, exactly.
pub fn h_star(k: i32, n: u64) -> BigRational {
    if k < 0 {
        return BigRational::zero();
    }
    let k = k as usize;
    let mut h = vec![BigRational::zero(); k + 1];
    for m in 1..=n {
        let inv = BigRational::new(BigInt::one(), BigInt::from(m));
        h[0] = BigRational::one();
        for j in 1..=k {
            let add = &h[j - 1] * &inv;
            h[j] += add;
        }
    }
    if n == 0 {
        return if k == 0 { BigRational::one() } else { BigRational::zero() };
    }
    h.pop().expect("k+1 entries")
}

/// `H_k(n) = Σ_{m≤n} m^{−k}`, exactly.
pub fn h_power(k: u32, n: u64) -> BigRational {
    let mut s = BigRational::zero();
    for m in 1..=n {
        s += BigRational::new(BigInt::one(), BigInt::from(m).pow(k));
    }
    s
}

/// A stored value of `H*_k(n)` or `H_k(n)`: exact below the configured
/// threshold, floating point above it.
#[derive(Debug, Clone, PartialEq)]
pub enum CacheEntry {
    Exact(BigRational),
    Float(f64),
}

impl CacheEntry {
    pub fn to_f64(&self) -> f64 {
        match self {
            CacheEntry::Exact(r) => rat_to_f64(r),
            CacheEntry::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CacheEntry::Exact(_))
    }
}

/// Memo table for `H*_k(n)` (`0 ≤ k ≤ k_max`) and `H_k(n)` (`1 ≤ k ≤ k_max`),
/// grown lazily in `n` up to `n_max`. Entries with `n ≤ exact_limit` are exact
/// rationals; exact denominators grow like `lcm(1..n)^k`, so the default
/// threshold is modest.
#[derive(Debug, Clone)]
pub struct HarmonicCache {
    k_max: usize,
    n_max: u64,
    exact_limit: u64,
    star_exact: Vec<Vec<BigRational>>, // [n-1][k]
    power_exact: Vec<Vec<BigRational>>, // [n-1][k-1]
    star_float: Vec<Vec<f64>>,
    power_float: Vec<Vec<f64>>,
}

impl Default for HarmonicCache {
    fn default() -> Self {
        HarmonicCache::new(64, 1_000_000, 200)
    }
}

impl HarmonicCache {
    pub fn new(k_max: usize, n_max: u64, exact_limit: u64) -> Self {
        HarmonicCache {
            k_max,
            n_max,
            exact_limit: exact_limit.min(n_max),
            star_exact: Vec::new(),
            power_exact: Vec::new(),
            star_float: Vec::new(),
            power_float: Vec::new(),
        }
    }

    pub fn len(&self) -> u64 {
        self.star_float.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.star_float.is_empty()
    }

    /// Extend the table to cover `n`.
    pub fn ensure(&mut self, n: u64) -> Result<()> {
        if n > self.n_max {
            return Err(Error::Resource(format!("harmonic cache limited to n <= {}", self.n_max)));
        }
        let k = self.k_max;
        while self.len() < n {
            let m = self.len() + 1;
            let mf = m as f64;
            let prev_f = self.star_float.last().cloned().unwrap_or_else(|| vec![0.0; k + 1]);
            let mut sf = vec![0.0; k + 1];
            sf[0] = 1.0;
            for j in 1..=k {
                sf[j] = prev_f[j] + sf[j - 1] / mf;
            }
            let prev_p = self.power_float.last().cloned().unwrap_or_else(|| vec![0.0; k]);
            let pf: Vec<f64> = (1..=k).map(|j| prev_p[j - 1] + libm::pow(mf, -(j as f64))).collect();
            if m <= self.exact_limit {
                let inv = BigRational::new(BigInt::one(), BigInt::from(m));
                let prev = self.star_exact.last().cloned().unwrap_or_else(|| vec![BigRational::zero(); k + 1]);
                let mut se = vec![BigRational::one(); k + 1];
                for j in 1..=k {
                    se[j] = &prev[j] + &se[j - 1] * &inv;
                }
                let prevp = self.power_exact.last().cloned().unwrap_or_else(|| vec![BigRational::zero(); k]);
                let mut pe = Vec::with_capacity(k);
                let mut ip = BigRational::one();
                for j in 1..=k {
                    ip = &ip * &inv;
                    pe.push(&prevp[j - 1] + &ip);
                }
                // keep the float rows consistent with the exact ones
                self.star_float.push(se.iter().map(rat_to_f64).collect());
                self.power_float.push(pe.iter().map(rat_to_f64).collect());
                self.star_exact.push(se);
                self.power_exact.push(pe);
            } else {
                self.star_float.push(sf);
                self.power_float.push(pf);
            }
        }
        Ok(())
    }

    /// `H*_k(n)` for `−1 ≤ k ≤ k_max`, `1 ≤ n ≤ len()`.
    pub fn h_star(&self, k: i32, n: u64) -> Result<CacheEntry> {
        if n == 0 || n > self.len() || k > self.k_max as i32 {
            return Err(Error::Resource("entry outside the cached range".into()));
        }
        if k < 0 {
            return Ok(CacheEntry::Exact(BigRational::zero()));
        }
        let i = (n - 1) as usize;
        Ok(if n <= self.exact_limit {
            CacheEntry::Exact(self.star_exact[i][k as usize].clone())
        } else {
            CacheEntry::Float(self.star_float[i][k as usize])
        })
    }

    /// `H_k(n)` for `1 ≤ k ≤ k_max`, `1 ≤ n ≤ len()`.
    pub fn h_power(&self, k: u32, n: u64) -> Result<CacheEntry> {
        if n == 0 || n > self.len() || k == 0 || k as usize > self.k_max {
            return Err(Error::Resource("entry outside the cached range".into()));
        }
        let i = (n - 1) as usize;
        Ok(if n <= self.exact_limit {
            CacheEntry::Exact(self.power_exact[i][k as usize - 1].clone())
        } else {
            CacheEntry::Float(self.power_float[i][k as usize - 1])
        })
    }
}

/// Index `(s_1, …, s_k)` of `ζ(s) = Σ_{0<n_1<⋯<n_k} n_1^{−s_1} ⋯ n_k^{−s_k}`.
/// The sum converges iff the exponent on the largest index, `s_k`, exceeds 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MzvIndex {
    s: Vec<u32>,
}

impl MzvIndex {
    pub fn new(s: Vec<u32>) -> Result<Self> {
        if s.is_empty() || s.contains(&0) {
            return Err(Error::domain("index entries must be positive"));
        }
        if *s.last().expect("nonempty") < 2 {
            return Err(Error::domain("divergent index: exponent on the largest summation index must be >= 2"));
        }
        Ok(MzvIndex { s })
    }

    pub fn entries(&self) -> &[u32] {
        &self.s
    }

    pub fn depth(&self) -> usize {
        self.s.len()
    }

    pub fn weight(&self) -> u32 {
        self.s.iter().sum()
    }

    fn nested(&self, start: f64, strict: bool) -> NestedSum {
        NestedSum::new(start, strict, self.s.iter().map(|&e| Weight::power(e as f64)).collect())
    }
}

/// Multiple zeta value (strict inequalities).
pub fn mzv(idx: &MzvIndex) -> Result<Bounded> {
    idx.nested(1.0, true).eval()
}

/// Multiple zeta-star value (weak inequalities).
pub fn mzv_star(idx: &MzvIndex) -> Result<Bounded> {
    idx.nested(1.0, false).eval()
}

/// All indices obtained by replacing each separating comma by either a comma
/// or a plus: `ζ*(s) = Σ ζ(t)` over the returned list.
pub fn star_expand(idx: &MzvIndex) -> Vec<MzvIndex> {
    let s = idx.entries();
    let gaps = s.len() - 1;
    let mut out = Vec::with_capacity(1 << gaps);
    for mask in 0..(1u32 << gaps) {
        let mut t = vec![s[0]];
        for (g, &e) in s[1..].iter().enumerate() {
            if mask & (1 << g) != 0 {
                *t.last_mut().expect("nonempty") += e;
            } else {
                t.push(e);
            }
        }
        out.push(MzvIndex { s: t });
    }
    out
}

/// `ζ(1, …, 1, 2)` with `k−2` ones against `ζ(k)`.
pub fn duality_check(k: u32) -> Result<Check> {
    if k < 2 {
        return Err(Error::domain("duality needs k >= 2"));
    }
    let mut s = vec![1u32; (k - 2) as usize];
    s.push(2);
    let lhs = mzv(&MzvIndex::new(s)?)?;
    let rhs = zeta_int(k as i64)?;
    Ok(Check::compare(format!("duality k={k}"), lhs, rhs))
}

/// Multiple Hurwitz zeta `Σ_{0<n_1<⋯<n_r} Π (n_i + x)^{−ν_i}`, `x ≥ 0`.
pub fn hurwitz_multi(nu: &[u32], x: f64) -> Result<Bounded> {
    if !(x >= 0.0) {
        return Err(Error::domain("multiple Hurwitz zeta needs x >= 0"));
    }
    if nu.is_empty() {
        return Ok(Bounded::exact(1.0));
    }
    let idx = MzvIndex::new(nu.to_vec())?;
    idx.nested(1.0 + x, true).eval()
}

/// `h_k(x) = ζ(1, …, 1, 2; x)` with `k−2` ones.
pub fn h_k(k: u32, x: f64) -> Result<Bounded> {
    if k < 2 {
        return Err(Error::domain("h_k needs k >= 2"));
    }
    let mut nu = vec![1u32; (k - 2) as usize];
    nu.push(2);
    hurwitz_multi(&nu, x)
}

/// `u_k` for GEM(θ) as
/// `θ^k Γ(θ) Σ_{0<n_1<⋯<n_{k−1}} Π 1/(θ+n_i+1) · Γ(n_{k−1}+2)/Γ(n_{k−1}+θ+2)`;
/// `u_0 = 1`, `u_1 = 1/(1+θ)`.
pub fn uk_theta_series(k: u32, theta: f64) -> Result<Bounded> {
    if !(theta > 0.0) {
        return Err(Error::domain("theta must be positive"));
    }
    match k {
        0 => return Ok(Bounded::exact(1.0)),
        1 => {
            let v = 1.0 / (1.0 + theta);
            return Ok(Bounded::new(v, f64::EPSILON * v));
        }
        _ => {}
    }
    // y = n + θ + 1 runs over θ+2, θ+3, …
    let mut w: Vec<Weight> = (0..k - 1).map(|_| Weight::power(1.0)).collect();
    let last = w.pop().expect("k >= 2").with_gamma_ratio(1.0 - theta, 1.0);
    w.push(last);
    let s = NestedSum::new(theta + 2.0, true, w).eval()?;
    let pre = gamma(theta)?.scale(libm::pow(theta, k as f64));
    Ok(s * pre)
}

/// `a_{i,θ} = Σ_{0<n_1<⋯<n_i≤θ+1} θ^i/(n_1⋯n_i)` for integer `θ ≥ 1`.
pub fn a_coeff(i: u32, theta: u32) -> Result<BigRational> {
    if theta == 0 || i == 0 || i > theta + 1 {
        return Err(Error::domain("a_coeff needs theta >= 1 and 1 <= i <= theta+1"));
    }
    // elementary symmetric polynomials of θ/1, …, θ/(θ+1)
    let n = (theta + 1) as usize;
    let mut e = vec![BigRational::zero(); n + 1];
    e[0] = BigRational::one();
    for m in 1..=n {
        let x = rat(theta as i64, m as i64);
        for j in (1..=m).rev() {
            let add = &e[j - 1] * &x;
            e[j] += add;
        }
    }
    Ok(e[i as usize].clone())
}

/// `ξ_m(k) = Σ_n H*_{k−1}(n)/n^{m+1}`.
pub fn xi_series(m: u32, k: u32) -> Result<Bounded> {
    if m == 0 || k == 0 {
        return Err(Error::domain("xi_series needs m, k >= 1"));
    }
    let mut w: Vec<Weight> = (1..k).map(|_| Weight::power(1.0)).collect();
    w.push(Weight::power((m + 1) as f64));
    NestedSum::new(1.0, false, w).eval()
}

/// `ξ_m(s) = Γ(s)^{−1} ∫_0^∞ t^{s−1} e^{−t} Li_m(1−e^{−t})/(1−e^{−t}) dt`
/// by quadrature in `u = e^{−t}`; an independent check on [`xi_series`].
pub fn xi_integral(m: u32, s: f64, rel_tol: f64) -> Result<Bounded> {
    if m == 0 || !(s > 0.0) {
        return Err(Error::domain("xi_integral needs m >= 1 and s > 0"));
    }
    let zm = if m >= 2 { zeta_int(m as i64)?.value } else { 0.0 };
    let f = |u: f64, uc: f64| {
        let lu = -libm::log(u);
        let li = if m == 1 {
            lu
        } else if 1.0 - u >= 1.0 {
            zm
        } else {
            polylog(m, 1.0 - u).map(|b| b.value).unwrap_or(zm)
        };
        libm::pow(lu, s - 1.0) * li / uc
    };
    let q = crate::quad::tanh_sinh(f, rel_tol)?;
    let g = gamma(s)?;
    Ok(Bounded::new(q.value / g.value, q.bound / g.value + q.value.abs() / g.value * g.rel_error()))
}

fn hstar_weights(k: u32, outer: Weight) -> NestedSum {
    let mut w: Vec<Weight> = (0..k).map(|_| Weight::power(1.0)).collect();
    w.push(outer);
    NestedSum::new(1.0, false, w)
}

/// `Σ_{n≥1} H*_k(n+1)/(n(n+1))`.
pub fn hstar_telescoping_sum(k: u32) -> Result<Bounded> {
    hstar_weights(k, Weight::power(1.0).with_shift(-1.0).from_index(2.0)).eval()
}

/// `Σ_{n≥1} H*_k(n)/n²`.
pub fn hstar_square_sum(k: u32) -> Result<Bounded> {
    hstar_weights(k, Weight::power(2.0)).eval()
}

/// `Σ_{n≥1} H*_k(n+1)/(n(n+1)²)`.
pub fn hstar_shifted_square_sum(k: u32) -> Result<Bounded> {
    hstar_weights(k, Weight::power(2.0).with_shift(-1.0).from_index(2.0)).eval()
}

/// `E[1/(Q̂_k+1)] = Σ_n (H*_{k−1}(n+1) − H*_{k−2}(n+1))/(n(n+1)²)` for `k ≥ 2`.
pub fn inv_moment_series(k: u32) -> Result<Bounded> {
    if k < 2 {
        return Err(Error::unsupported("series route needs k >= 2"));
    }
    Ok(hstar_shifted_square_sum(k - 1)? - hstar_shifted_square_sum(k - 2)?)
}

// ---------------------------------------------------------------------------
// Euler sums s_h(k,s) = Σ H(n)^k/(n+1)^s and σ_h(k,s) = Σ H_k(n)/(n+1)^s.

const EULER_DIRECT: u64 = 1000;
const JET_BERNOULLI: usize = 12;

/// Truncated Taylor series in `ε`.
#[derive(Debug, Clone)]
struct Jet(Vec<f64>);

impl Jet {
    fn zero(n: usize) -> Self {
        Jet(vec![0.0; n])
    }

    fn mul(&self, o: &Jet) -> Jet {
        let n = self.0.len();
        let mut r = vec![0.0; n];
        for i in 0..n {
            for j in 0..n - i {
                r[i + j] += self.0[i] * o.0[j];
            }
        }
        Jet(r)
    }

    fn add_scaled(&mut self, o: &Jet, c: f64) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += c * b;
        }
    }

    /// `x^{−ε}` = `exp(−ε ln x)`.
    fn pow_neg(x: f64, n: usize) -> Jet {
        let l = libm::log(x);
        let mut r = Vec::with_capacity(n);
        let mut c = 1.0;
        for i in 0..n {
            r.push(c);
            c *= -l / (i + 1) as f64;
        }
        Jet(r)
    }

    /// `1/(a + ε)`.
    fn recip_shift(a: f64, n: usize) -> Jet {
        let mut r = Vec::with_capacity(n);
        let mut c = 1.0 / a;
        for _ in 0..n {
            r.push(c);
            c *= -1.0 / a;
        }
        Jet(r)
    }

    /// `a + ε`.
    fn linear(a: f64, n: usize) -> Jet {
        let mut r = vec![0.0; n];
        r[0] = a;
        if n > 1 {
            r[1] = 1.0;
        }
        Jet(r)
    }
}

/// `Σ_{x ≥ X} (ln x)^i x^{−t}` for `i = 0..=imax`, as `(−1)^i ∂_t^i ζ(t, X)`
/// with the Euler–Maclaurin expansion of `ζ(t+ε, X)` carried in `ε`.
fn log_power_tails(t: f64, big: f64, imax: usize) -> (Vec<f64>, f64) {
    let n = imax + 1;
    let base = Jet::pow_neg(big, n);
    let mut z = Jet::zero(n);
    // X^{1−t−ε}/(t+ε−1)
    z.add_scaled(&base.mul(&Jet::recip_shift(t - 1.0, n)), libm::pow(big, 1.0 - t));
    // X^{−t−ε}/2
    z.add_scaled(&base, 0.5 * libm::pow(big, -t));
    let mut poch = Jet::linear(t, n); // (t+ε)_{2j−1}
    let mut last = 0.0;
    for j in 1..=JET_BERNOULLI + 1 {
        let c = bernoulli(2 * j) / factorial(2 * j) * libm::pow(big, 1.0 - t - (2 * j) as f64);
        let term = base.mul(&poch);
        if j > JET_BERNOULLI {
            last = term.0.iter().enumerate().map(|(i, v)| (v * c).abs() * factorial(i)).fold(0.0, f64::max);
            break;
        }
        z.add_scaled(&term, c);
        poch = poch
            .mul(&Jet::linear(t + (2 * j - 1) as f64, n))
            .mul(&Jet::linear(t + (2 * j) as f64, n));
    }
    let out = z
        .0
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { 1.0 } else { -1.0 } * v * factorial(i))
        .collect();
    (out, last)
}

/// `s_h(k, s) = Σ_{n≥1} H(n)^k/(n+1)^s` for `s ≥ 2`.
pub fn s_h(k: u32, s: u32) -> Result<Bounded> {
    if s < 2 {
        return Err(Error::domain("s_h needs s >= 2"));
    }
    let sf = s as f64;
    let mut acc = Sum::new();
    let mut h = Sum::new();
    for n in 1..=EULER_DIRECT {
        h.add(1.0 / n as f64);
        acc.add(libm::pow(h.value(), k as f64) * libm::pow((n + 1) as f64, -sf));
    }
    // Tail over x = n+1 ≥ X with H(x−1) = γ + ln x + g(x),
    // g(x) = −1/(2x) − Σ_j B_{2j}/(2j x^{2j}).
    let big = (EULER_DIRECT + 2) as f64;
    let len = DEFAULT_LEN;
    let mut g = vec![0.0; len];
    g[0] = EULER_GAMMA;
    g[1] = -0.5;
    let mut j = 1;
    while 2 * j < len {
        g[2 * j] = -bernoulli(2 * j) / (2 * j) as f64;
        j += 1;
    }
    let gs = Series { sigma: 0.0, coeffs: g };
    let mut powers = vec![Series::power(0.0, len)];
    for m in 1..=k as usize {
        let next = powers[m - 1].mul(&gs);
        powers.push(next);
    }
    let mut tail = Sum::new();
    let mut err = 0.0;
    let mut binom = 1.0;
    for i in 0..=k as usize {
        // C(k, i) L^i (γ + g)^{k−i}
        let ser = &powers[k as usize - i];
        for (p, &c) in ser.coeffs.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            let (tails, last) = log_power_tails(sf + p as f64, big, i);
            tail.add(binom * c * tails[i]);
            err += (binom * c).abs() * last;
        }
        let tr = ser.truncation(big) * libm::pow(libm::log(big), i as f64) * big / (sf - 1.0);
        err += binom * tr;
        binom = binom * (k as usize - i) as f64 / (i + 1) as f64;
    }
    let v = acc.value() + tail.value();
    let rounding = acc.rounding_bound() + tail.rounding_bound() + 4.0 * EULER_DIRECT as f64 * f64::EPSILON * v.abs();
    Ok(Bounded::new(v, err + rounding))
}

/// `σ_h(k, s) = Σ_{n≥1} H_k(n)/(n+1)^s` for `k ≥ 2`, `s ≥ 2` (`k = 1` is `s_h(1, s)`).
pub fn sigma_h(k: u32, s: u32) -> Result<Bounded> {
    if s < 2 || k == 0 {
        return Err(Error::domain("sigma_h needs k >= 1 and s >= 2"));
    }
    if k == 1 {
        return s_h(1, s);
    }
    let sf = s as f64;
    let mut acc = Sum::new();
    let mut h = Sum::new();
    for n in 1..=EULER_DIRECT {
        h.add(libm::pow(n as f64, -(k as f64)));
        acc.add(h.value() * libm::pow((n + 1) as f64, -sf));
    }
    // Σ_{x≥X} (ζ(k) − ζ(k, x)) x^{−s}
    let big = (EULER_DIRECT + 2) as f64;
    let zk = zeta_int(k as i64)?;
    let zs = crate::special::hurwitz_zeta(sf, big)?;
    let zkx = Series::power(k as f64, DEFAULT_LEN).tail_series()?;
    let inner = zkx.mul(&Series::power(sf, DEFAULT_LEN));
    let t2 = inner.tail_value(big)?;
    let t1 = zk * zs;
    let tail = t1 - t2;
    let v = acc.value() + tail.value;
    let bound = tail.bound
        + zkx.truncation(big) * zs.value
        + acc.rounding_bound()
        + 4.0 * EULER_DIRECT as f64 * f64::EPSILON * v.abs();
    Ok(Bounded::new(v, bound))
}

fn combo_value(c: &ZetaCombo) -> Result<Bounded> {
    c.eval()
}

/// Evaluate the harmonic-sum identities. Each check compares a
/// nested-sum or Euler-sum evaluation against its closed form.
pub fn identity_suite() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let zeta = |k: u32| zeta_int(k as i64);
    for k in 0..=6u32 {
        let lhs = hstar_telescoping_sum(k)?;
        out.push(Check::compare(format!("H* telescoping k={k}"), lhs, Bounded::exact((k + 1) as f64)));
    }
    for k in 0..=6u32 {
        let lhs = hstar_square_sum(k)?;
        let rhs = zeta(k + 2)?.scale((k + 1) as f64);
        out.push(Check::compare(format!("H*/n^2 k={k}"), lhs, rhs));
    }
    for k in 0..=6u32 {
        let lhs = hstar_shifted_square_sum(k)?;
        let c = ZetaCombo::from_parts(rat(k as i64 + 2, 1), [(k + 2, rat(-(k as i64) - 1, 1))])?;
        out.push(Check::compare(format!("H*/(n(n+1)^2) k={k}"), lhs, combo_value(&c)?));
    }
    for k in 2..=8u32 {
        let lhs = inv_moment_series(k)?;
        out.push(Check::compare(format!("inverse moment series k={k}"), lhs, combo_value(&inv_moment_qk(k)?)?));
    }
    let z4 = zeta(4)?;
    let eleven = (s_h(2, 2)? + s_h(1, 3)?.scale(2.0) + z4).scale(0.5);
    out.push(Check::compare("H^2/n^2 Euler sum", eleven, z4.scale(17.0 / 8.0)));
    let two = (sigma_h(2, 2)? + z4).scale(0.5);
    out.push(Check::compare("H_2/n^2 Euler sum", two, z4.scale(7.0 / 8.0)));
    out.push(Check::compare("H*_2/n^2 split", eleven + two, hstar_square_sum(2)?));
    out.push(Check::compare("H*_2/n^2 = 3 zeta(4)", eleven + two, z4.scale(3.0)));
    let euler = s_h(1, 2)? + zeta(3)?;
    out.push(Check::compare("Euler sum H/n^2", euler, zeta(3)?.scale(2.0)));
    out.push(Check::compare("xi_1(2) = 2 zeta(3)", xi_series(1, 2)?, zeta(3)?.scale(2.0)));
    out.push(Check::compare("sum (zeta(n)-1) = 1", zeta_minus_one_sum()?, Bounded::exact(1.0)));
    for k in 2..=6u32 {
        out.push(duality_check(k)?);
    }
    Ok(out)
}

/// `Σ_{n≥2} (ζ(n) − 1)`, summed until the terms drop below `1e−20`; the
/// tail is at most twice the first omitted term since `ζ(n) − 1 ≤ 2^{1−n}`.
pub fn zeta_minus_one_sum() -> Result<Bounded> {
    let mut acc = Sum::new();
    let mut err = 0.0;
    let mut n = 2i64;
    loop {
        let t = zeta_minus_one(n)?;
        if t.value < 1e-20 {
            let tail = 2.0 * t.value;
            let v = acc.value();
            return Ok(Bounded::new(v, err + tail + acc.rounding_bound()));
        }
        acc.add(t.value);
        err += t.bound;
        n += 1;
    }
}
