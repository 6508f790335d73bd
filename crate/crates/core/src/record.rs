//! The chain `Q̂^{ℓ,θ}` with transitions `q̂^θ(m,n) = (m)_{n−m} θ / (θ+m)_{n−m+1}`,
//! its record-process description, and the empty-interval counts `C_k`, `C_∞`.

use crate::combo::{uk_closed, ZetaCombo};
use crate::nested::{NestedSum, Weight};
use crate::precision::{Bounded, Sum};
use crate::scalar::rat;
use crate::special::{digamma, gamma, hurwitz_zeta, ln_gamma};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Start state `ℓ ≥ 1` and stick-breaking parameter `θ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams {
    pub ell: u64,
    pub theta: f64,
}

impl ChainParams {
    pub fn new(ell: u64, theta: f64) -> Result<Self> {
        if ell == 0 || !(theta > 0.0) || !theta.is_finite() {
            return Err(Error::domain("chain needs ell >= 1 and theta > 0"));
        }
        Ok(ChainParams { ell, theta })
    }

    /// `ℓ = θ = 1`, the uniform stick-breaking case.
    pub fn uniform() -> Self {
        ChainParams { ell: 1, theta: 1.0 }
    }
}

/// A pmf on `start, start+1, …` with the unassigned mass kept separately.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedDist {
    pub start: u64,
    pub pmf: Vec<f64>,
    pub truncation_mass: f64,
}

impl TruncatedDist {
    pub fn get(&self, n: u64) -> f64 {
        if n < self.start {
            return 0.0;
        }
        self.pmf.get((n - self.start) as usize).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.pmf.iter().copied().collect::<Sum>().value()
    }
}

/// `q̂^θ(m, n) = θ/(θ+n) · Π_{i=m}^{n−1} i/(θ+i)`; zero for `n < m`.
pub fn qhat(m: u64, n: u64, theta: f64) -> f64 {
    if n < m || m == 0 {
        return 0.0;
    }
    theta / (theta + n as f64) * survival(m, n - 1, theta)
}

/// `P(X ≥ N+1)` for `X ~ q̂^θ(m, ·)`: `Π_{i=m}^{N} i/(θ+i)` (1 when `N < m`).
pub fn survival(m: u64, big_n: u64, theta: f64) -> f64 {
    if big_n < m {
        return 1.0;
    }
    let len = big_n - m + 1;
    if len <= 4096 {
        (m..=big_n).fold(1.0, |acc, i| acc * (i as f64 / (theta + i as f64)))
    } else {
        let lg = |x: f64| ln_gamma(x).expect("positive argument").value;
        let (a, b) = (m as f64, big_n as f64 + 1.0);
        libm::exp(lg(b) - lg(a) + lg(theta + a) - lg(theta + b))
    }
}

/// Exact `q̂^θ(m, n)` for rational `θ`.
pub fn qhat_exact(m: u64, n: u64, theta: &BigRational) -> BigRational {
    if n < m || m == 0 {
        return BigRational::zero();
    }
    let mut r = theta / (theta + BigRational::from_integer(BigInt::from(n)));
    for i in m..n {
        let ii = BigRational::from_integer(BigInt::from(i));
        r = r * &ii / (theta + &ii);
    }
    r
}

fn ln_binom(n: u64, k: u64) -> f64 {
    let lg = |x: f64| ln_gamma(x).expect("positive argument").value;
    lg(n as f64 + 1.0) - lg(k as f64 + 1.0) - lg((n - k) as f64 + 1.0)
}

/// `C(n−1, m−1) · E[W^{n−m} (1−W)^m]` for a user-supplied moment function
/// `(i, j) ↦ E[W^i (1−W)^j]`.
pub fn qhat_general(m: u64, n: u64, w_moment: &dyn Fn(u64, u64) -> f64) -> f64 {
    if n < m || m == 0 {
        return 0.0;
    }
    libm::exp(ln_binom(n - 1, m - 1)) * w_moment(n - m, m)
}

/// `E[W^i (1−W)^j] = θ Γ(i+1) Γ(j+θ) / Γ(i+j+θ+1)` for `W ~ beta(1, θ)`.
pub fn beta_one_theta_moment(theta: f64) -> impl Fn(u64, u64) -> f64 {
    move |i, j| {
        let lg = |x: f64| ln_gamma(x).expect("positive argument").value;
        let (i, j) = (i as f64, j as f64);
        theta * libm::exp(lg(i + 1.0) + lg(j + theta) - lg(i + j + theta + 1.0))
    }
}

/// Weak-record transition `r(m, n) = P(X = n) / P(X ≥ m)` for a base law on
/// `{ℓ, ℓ+1, …}`; `P(X ≥ m)` is taken as `1 − Σ_{ℓ≤x<m} P(X = x)`.
pub fn record_kernel<T: crate::scalar::Scalar>(m: u64, n: u64, ell: u64, base: &dyn Fn(u64) -> T) -> Result<T> {
    if m < ell {
        return Err(Error::domain("record kernel state below the support"));
    }
    if n < m {
        return Ok(T::zero());
    }
    let mut below = T::zero();
    for x in ell..m {
        below = below + base(x);
    }
    Ok(base(n) / (T::one() - below))
}

/// Iterated harmonic sums `H*_0(n), …, H*_{k}(n)` in floating point, updated
/// one `n` at a time.
#[derive(Debug, Clone)]
pub struct HStarRow {
    pub n: u64,
    pub h: Vec<f64>,
}

impl HStarRow {
    pub fn new(k: usize) -> Self {
        HStarRow { n: 0, h: vec![0.0; k + 1] }
    }

    /// Advance to `n+1`: `H*_j(n+1) = H*_j(n) + H*_{j−1}(n+1)/(n+1)`.
    pub fn advance(&mut self) {
        self.n += 1;
        let inv = 1.0 / self.n as f64;
        self.h[0] = 1.0;
        for j in 1..self.h.len() {
            self.h[j] += self.h[j - 1] * inv;
        }
    }
}

/// Law of `Q̂_k` for `ℓ = θ = 1` on `1..=N` from
/// `P(Q̂_k = n) = (H*_{k−1}(n+1) − H*_{k−2}(n+1)) / (n(n+1))`.
pub fn qk_dist(k: usize, big_n: u64) -> Result<TruncatedDist> {
    if k == 0 {
        return Err(Error::domain("qk_dist needs k >= 1"));
    }
    let mut row = HStarRow::new(k);
    row.advance(); // n+1 = 1
    let mut pmf = Vec::with_capacity(big_n as usize);
    for n in 1..=big_n {
        row.advance(); // now at n+1
        let hi = row.h[k - 1];
        let lo = if k >= 2 { row.h[k - 2] } else { 0.0 };
        let nf = n as f64;
        pmf.push((hi - lo) / (nf * (nf + 1.0)));
    }
    let total: Sum = pmf.iter().copied().collect();
    Ok(TruncatedDist { start: 1, pmf, truncation_mass: 1.0 - total.value() })
}

/// `A(n) = Π_{i=1}^{n−1} i/(θ+i)`, so that `q̂(m,n) = θ A(n) / ((θ+n) A(m))`.
fn a_table(theta: f64, big_n: u64) -> Vec<f64> {
    let mut a = Vec::with_capacity(big_n as usize + 2);
    a.push(f64::NAN); // index 0 unused
    let mut cur = 1.0;
    for n in 1..=big_n + 1 {
        a.push(cur);
        cur *= n as f64 / (theta + n as f64);
    }
    a
}

/// Law of `Q̂_k^{ℓ,θ}` on `ℓ..=N` by composing the kernel `k` times. The
/// truncation mass is the exact probability of having left `{ℓ..N}`.
pub fn qk_dist_kernel(k: usize, p: ChainParams, big_n: u64) -> Result<TruncatedDist> {
    if big_n < p.ell {
        return Err(Error::domain("truncation below the start state"));
    }
    let th = p.theta;
    let a = a_table(th, big_n);
    let off = p.ell as usize;
    let width = (big_n - p.ell + 1) as usize;
    let mut cur = vec![0.0; width];
    cur[0] = 1.0;
    let mut lost = 0.0;
    for _ in 0..k {
        let mut next = vec![0.0; width];
        let mut prefix = Sum::new();
        let mut escape = Sum::new();
        for i in 0..width {
            let n = off + i;
            prefix.add(cur[i] / a[n]);
            next[i] = th * a[n] / (th + n as f64) * prefix.value();
            escape.add(cur[i] * a[big_n as usize + 1] / a[n]);
        }
        lost += escape.value();
        cur = next;
    }
    Ok(TruncatedDist { start: p.ell, pmf: cur, truncation_mass: lost })
}

/// `P(Q̂_1 = n_1, …, Q̂_k = n_k)` for `ℓ = θ = 1`:
/// `1 / ((n_1+1)⋯(n_{k−1}+1)(n_k+1) n_k)` on weakly increasing paths.
pub fn path_prob(path: &[u64]) -> BigRational {
    if path.is_empty() {
        return BigRational::one();
    }
    if path[0] == 0 || path.windows(2).any(|w| w[1] < w[0]) {
        return BigRational::zero();
    }
    let mut den = BigInt::one();
    for &n in path {
        den *= BigInt::from(n + 1);
    }
    den *= BigInt::from(*path.last().expect("nonempty"));
    BigRational::new(BigInt::one(), den)
}

/// The same path probability as a product of exact transitions from `start`.
pub fn path_prob_kernel(start: u64, path: &[u64], theta: &BigRational) -> BigRational {
    let mut r = BigRational::one();
    let mut prev = start;
    for &n in path {
        r *= qhat_exact(prev, n, theta);
        prev = n;
    }
    r
}

/// `u_k = P(1 = Q̂_0 < Q̂_1 < ⋯ < Q̂_k)`: in `y = n + θ`,
/// `Γ(θ+1) Σ_{2+θ ≤ y₁ < ⋯ < y_k} Π_{i<k} θ/y_i · θ Γ(y_k − θ)/Γ(y_k + 1)`.
pub fn uk_strict_path(k: usize, theta: f64) -> Result<Bounded> {
    if k == 0 {
        return Ok(Bounded::exact(1.0));
    }
    if !(theta > 0.0) {
        return Err(Error::domain("theta must be positive"));
    }
    let mut w: Vec<Weight> = (1..k).map(|_| Weight::power(1.0).scaled(theta)).collect();
    w.push(Weight::power(0.0).scaled(theta).with_gamma_ratio(-theta, 1.0));
    let s = NestedSum::new(2.0 + theta, true, w).eval()?;
    let g = gamma(theta + 1.0)?;
    Ok(s * g)
}

/// `F_{ℓ,θ}(z) = Γ(ℓ+1+θ) Γ(ℓ+θ−θz) / (Γ(ℓ) Γ(ℓ+1+2θ−θz))`.
pub fn c_inf_pgf(p: ChainParams, z: f64) -> Result<Bounded> {
    if z > 1.0 {
        return Err(Error::domain("pgf evaluated only for z <= 1"));
    }
    let (l, th) = (p.ell as f64, p.theta);
    let parts = [
        ln_gamma(l + 1.0 + th)?,
        ln_gamma(l + th - th * z)?,
        ln_gamma(l)?,
        ln_gamma(l + 1.0 + 2.0 * th - th * z)?,
    ];
    let lv = parts[0].value + parts[1].value - parts[2].value - parts[3].value;
    let lb: f64 = parts.iter().map(|b| b.bound).sum::<f64>() + 4.0 * f64::EPSILON * parts.iter().map(|b| b.value.abs()).sum::<f64>();
    let v = libm::exp(lv);
    Ok(Bounded::new(v, v * libm::expm1(lb) + f64::EPSILON * v))
}

/// `y_j/(j−1)!` with `y_j = (−θ)^j Δ_j`, `Δ_j = ψ^{(j−1)}(a) − ψ^{(j−1)}(b)`;
/// for `j ≥ 2` this is `θ^j (ζ(j,a) − ζ(j,b))`.
fn reduced_delta(theta: f64, a: f64, b: f64, kmax: usize) -> Result<Vec<f64>> {
    let mut x = Vec::with_capacity(kmax);
    if kmax == 0 {
        return Ok(x);
    }
    x.push(-theta * (digamma(a)?.value - digamma(b)?.value));
    let mut tp = theta;
    for j in 2..=kmax {
        tp *= theta;
        let za = hurwitz_zeta(j as f64, a)?.value;
        let zb = hurwitz_zeta(j as f64, b)?.value;
        x.push(tp * (za - zb));
    }
    Ok(x)
}

/// `[b_0, …, b_K]` with `b_n = (1/n) Σ_j r_j b_{n−j}`, i.e. `P_n(y)/n!` when
/// `r_j = y_j/(j−1)!`.
fn bell_from_reduced(r: &[f64]) -> Vec<f64> {
    let mut b = Vec::with_capacity(r.len() + 1);
    b.push(1.0);
    for n in 1..=r.len() {
        let mut s = Sum::new();
        for j in 1..=n {
            s.add(r[j - 1] * b[n - j]);
        }
        b.push(s.value() / n as f64);
    }
    b
}

/// `P(C_∞^{ℓ,θ} = k)` for `k = 0..=kmax`, from the Bell-polynomial expansion of
/// the pgf at `z = 0`.
pub fn c_inf_pmf_all(p: ChainParams, kmax: usize) -> Result<Vec<f64>> {
    let (l, th) = (p.ell as f64, p.theta);
    let r = reduced_delta(th, l + th, l + 1.0 + 2.0 * th, kmax)?;
    let f0 = c_inf_pgf(p, 0.0)?.value;
    Ok(bell_from_reduced(&r).into_iter().map(|b| f0 * b).collect())
}

pub fn c_inf_pmf(p: ChainParams, k: usize) -> Result<f64> {
    Ok(c_inf_pmf_all(p, k)?[k])
}

/// `E binom(C_∞, k) = ((−θ)^k/k!) P_k(Δ_1(1), …, Δ_k(1))`.
/// `P(C_∞ = j)` from the mixed-Poisson description: parameter `−θ ln H`
/// with `H ~ beta(ℓ, θ+1)`, integrated numerically.
pub fn c_inf_pmf_mixed_poisson(p: ChainParams, j: usize, rel_tol: f64) -> Result<Bounded> {
    let (l, th) = (p.ell as f64, p.theta);
    let ln_b = crate::special::ln_gamma(l)?.value + crate::special::ln_gamma(th + 1.0)?.value
        - crate::special::ln_gamma(l + th + 1.0)?.value;
    let ln_jf = crate::special::ln_gamma(j as f64 + 1.0)?.value;
    let f = |h: f64, hc: f64| {
        let lh = if h > 0.5 { libm::log1p(-hc) } else { libm::log(h) };
        let mut lp = (th + l - 1.0) * lh + th * libm::log(hc) - ln_b;
        if j > 0 {
            lp += j as f64 * libm::log(-th * lh) - ln_jf;
        }
        libm::exp(lp)
    };
    crate::quad::tanh_sinh(f, rel_tol)
}

pub fn c_binom_moment(p: ChainParams, k: usize) -> Result<f64> {
    let (l, th) = (p.ell as f64, p.theta);
    let r = reduced_delta(th, l, l + 1.0 + th, k)?;
    Ok(bell_from_reduced(&r)[k])
}

/// The same law for integer `θ` as the convolution of independent geometrics
/// on `{0,1,…}` with success probabilities `(ℓ+j)/(ℓ+j+θ)`, `j = 0..=θ`.
pub fn c_inf_pmf_geometric(ell: u64, theta: u64, kmax: usize) -> Vec<f64> {
    let mut pmf = vec![0.0; kmax + 1];
    pmf[0] = 1.0;
    for j in 0..=theta {
        let pj = (ell + j) as f64 / (ell + j + theta) as f64;
        let g: Vec<f64> = (0..=kmax).map(|s| pj * libm::pow(1.0 - pj, s as f64)).collect();
        let mut out = vec![0.0; kmax + 1];
        for (a, pa) in pmf.iter().enumerate() {
            for (b, gb) in g.iter().enumerate().take(kmax + 1 - a) {
                out[a + b] += pa * gb;
            }
        }
        pmf = out;
    }
    pmf
}

/// `E C_k^{1,1}`: `1/2` for `k = 1`, else `1/2 + k − (k−1) ζ(k)`.
pub fn mean_empty_ck(k: u32) -> Result<ZetaCombo> {
    match k {
        0 => Err(Error::domain("k must be >= 1")),
        1 => Ok(ZetaCombo::constant(rat(1, 2))),
        _ => {
            let c0 = rat(1, 2) + rat(k as i64, 1);
            ZetaCombo::from_parts(c0, [(k, rat(1 - k as i64, 1))])
        }
    }
}

/// `E binom(C_k^{1,1}, k−1) = 2k − 2 + 2^{1−k} − Σ_{j=2}^k (2^{k+1−j} − 1)/2^{k−j} ζ(j)`.
pub fn binom_km1(k: u32) -> Result<ZetaCombo> {
    if k < 2 {
        return Err(Error::domain("binom_km1 needs k >= 2"));
    }
    let p2 = |e: u32| BigRational::from_integer(BigInt::one() << e as usize);
    let c0 = rat(2 * k as i64 - 2, 1) + BigRational::one() / p2(k - 1);
    let terms = (2..=k).map(|j| (j, -(p2(k + 1 - j) - BigRational::one()) / p2(k - j)));
    ZetaCombo::from_parts(c0, terms)
}

/// Exact row `P(C_k^{1,1} = j)`, `j = 0..=k`, for `1 ≤ k ≤ 4`.
///
/// `j = 0` is `u_k`, `j = k` is `2^{−k}`, `j = k−1` is `E binom(C_k, k−1) − k/2^k`;
/// for `k = 4` the two remaining entries follow from total mass 1 and the mean.
pub fn ck11_table(k: u32) -> Result<Vec<ZetaCombo>> {
    if k == 0 {
        return Err(Error::domain("k must be >= 1"));
    }
    if k > 4 {
        return Err(Error::unsupported("closed-form rows only for k <= 4; use ck_pmf_dp"));
    }
    let top = ZetaCombo::constant(BigRational::new(BigInt::one(), BigInt::one() << k as usize));
    if k == 1 {
        return Ok(vec![ZetaCombo::constant(rat(1, 2)), top]);
    }
    let p0 = uk_closed(k);
    let km1 = &binom_km1(k)? - &ZetaCombo::constant(BigRational::new(BigInt::from(k), BigInt::one() << k as usize));
    let one = ZetaCombo::constant(rat(1, 1));
    let mean = mean_empty_ck(k)?;
    let kk = |x: i64| rat(x, 1);
    match k {
        2 => {
            let p1 = &(&one - &p0) - &top;
            Ok(vec![p0, p1, top])
        }
        3 => {
            // p1 + p2 = 1 − p0 − p3, with p2 = km1
            let p1 = &(&(&one - &p0) - &km1) - &top;
            Ok(vec![p0, p1, km1, top])
        }
        _ => {
            // p1 + p2 = R1, p1 + 2 p2 = R2
            let r1 = &(&(&one - &p0) - &km1) - &top;
            let r2 = &(&mean - &km1.scale(&kk(3))) - &top.scale(&kk(4));
            let p2 = &r2 - &r1;
            let p1 = &r1 - &p2;
            Ok(vec![p0, p1, p2, km1, top])
        }
    }
}

/// `P(C_k^{ℓ,θ} = j)`, `j = 0..=k`, by dynamic programming over (state ≤ N,
/// repeat count).
///
/// Paths that jump above `N` are assigned their current repeat count: from a
/// state `n > N` each later step repeats with probability `θ/(θ+n) < θ/(θ+N)`.
/// `truncation_mass` bounds the total-variation error of that assignment,
/// `Σ (escaped mass) · min(1, (steps left) · θ/(θ+N+1))`.
pub fn ck_pmf_dp(k: usize, p: ChainParams, big_n: u64) -> Result<TruncatedDist> {
    if k == 0 {
        return Err(Error::domain("ck_pmf_dp needs k >= 1"));
    }
    if big_n < p.ell {
        return Err(Error::domain("truncation below the start state"));
    }
    let th = p.theta;
    let a = a_table(th, big_n);
    let off = p.ell as usize;
    let width = (big_n - p.ell + 1) as usize;
    // cur[c][i]: probability of state off+i with c repeats so far
    let mut cur = vec![vec![0.0; width]; k + 1];
    cur[0][0] = 1.0;
    let mut escaped = vec![Sum::new(); k + 1];
    let mut lost = Sum::new();
    let a_out = a[big_n as usize + 1];
    let stay_out = th / (th + big_n as f64 + 1.0);
    for step in 0..k {
        let mut next = vec![vec![0.0; width]; k + 1];
        for c in 0..=step {
            let mut prefix = Sum::new();
            let row = &cur[c];
            for i in 0..width {
                let n = off + i;
                let g = th * a[n] / (th + n as f64);
                // moves from m < n keep the count; a stay at n adds one
                next[c][i] += g * prefix.value();
                if c < k {
                    next[c + 1][i] += row[i] * th / (th + n as f64);
                }
                prefix.add(row[i] / a[n]);
            }
            let out = a_out * prefix.value();
            escaped[c].add(out);
            lost.add(out * (stay_out * (k - step - 1) as f64).min(1.0));
        }
        cur = next;
    }
    let pmf: Vec<f64> = cur
        .iter()
        .zip(&escaped)
        .map(|(row, e)| row.iter().copied().collect::<Sum>().value() + e.value())
        .collect();
    Ok(TruncatedDist { start: 0, pmf, truncation_mass: lost.value() })
}

/// `P(S_n = s) = (n+1)^{−s} (1 − 1/(n+1))`: the number of visits of the
/// `ℓ = θ = 1` chain to state `n`.
pub fn occupation_geom_pmf(n: u64, s: u64) -> f64 {
    let nf = n as f64;
    libm::pow(nf + 1.0, -(s as f64)) * nf / (nf + 1.0)
}

/// `E[1/(Q̂_k + 1)] = 1 − k ζ(k+1) + (k−1) ζ(k)` for `k ≥ 2`.
pub fn inv_moment_qk(k: u32) -> Result<ZetaCombo> {
    if k < 2 {
        return Err(Error::unsupported(
            "first inverse moment formula holds for k >= 2; see inv_moment_q1",
        ));
    }
    ZetaCombo::from_parts(rat(1, 1), [(k + 1, rat(-(k as i64), 1)), (k, rat(k as i64 - 1, 1))])
}

/// `E[1/(Q̂_1 + 1)] = Σ 1/(n(n+1)²) = 2 − ζ(2)`.
pub fn inv_moment_q1() -> ZetaCombo {
    ZetaCombo::from_parts(rat(2, 1), [(2, rat(-1, 1))]).expect("valid index")
}
