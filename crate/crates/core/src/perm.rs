//! Exact finite-`n` computations for random permutations and exchangeable
//! partitions: EPPFs, brute-force `u_{k:n}`, the `u_{2:n}` decomposition and
//! its `n → ∞` limit.

use crate::nested::{NestedSum, Weight};
use crate::precision::Bounded;
use crate::scalar::rat_int;
use crate::special::{gamma, hyp3f2_unit};
use crate::{Error, Result};
use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Largest `n` accepted by [`brute_force_ukn`].
pub const BRUTE_FORCE_MAX_N: usize = 10;

/// Block sizes `(n_1, …, n_k)` of a partition listed in order of appearance.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(Error::domain("composition parts must be positive"));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }
}

/// An exchangeable partition probability function.
pub trait Eppf {
    fn p(&self, parts: &[usize]) -> BigRational;
}

/// Ewens(θ): `θ^{k−1}/(1+θ)_{n−1} · Π (1)_{n_i−1}`.
#[derive(Debug, Clone)]
pub struct Ewens {
    pub theta: BigRational,
}

impl Ewens {
    pub fn new(theta: BigRational) -> Result<Self> {
        if !theta.is_positive() {
            return Err(Error::domain("theta must be positive"));
        }
        Ok(Ewens { theta })
    }
}

fn rising(x: &BigRational, n: usize) -> BigRational {
    let mut r = BigRational::one();
    for i in 0..n {
        r *= x + rat_int(i as i64);
    }
    r
}

fn fact(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

impl Eppf for Ewens {
    fn p(&self, parts: &[usize]) -> BigRational {
        let n: usize = parts.iter().sum();
        let k = parts.len();
        let mut num = BigRational::from_integer(parts.iter().map(|&m| fact(m - 1)).product());
        for _ in 1..k {
            num *= &self.theta;
        }
        num / rising(&(&self.theta + BigRational::one()), n - 1)
    }
}

/// Two-parameter (Pitman–Yor) family
/// `Π_{i<k}(θ+iα) / (1+θ)_{n−1} · Π (1−α)_{n_i−1}`; `α = 0` is Ewens.
#[derive(Debug, Clone)]
pub struct PitmanYor {
    pub alpha: BigRational,
    pub theta: BigRational,
}

impl PitmanYor {
    pub fn new(alpha: BigRational, theta: BigRational) -> Result<Self> {
        if alpha.is_negative() || alpha >= BigRational::one() || theta <= -alpha.clone() {
            return Err(Error::domain("need 0 <= alpha < 1 and theta > -alpha"));
        }
        Ok(PitmanYor { alpha, theta })
    }
}

impl Eppf for PitmanYor {
    fn p(&self, parts: &[usize]) -> BigRational {
        let n: usize = parts.iter().sum();
        let one_minus = BigRational::one() - &self.alpha;
        let mut num = BigRational::one();
        for i in 1..parts.len() {
            num *= &self.theta + &self.alpha * rat_int(i as i64);
        }
        for &m in parts {
            num *= rising(&one_minus, m - 1);
        }
        num / rising(&(&self.theta + BigRational::one()), n - 1)
    }
}

/// Ewens EPPF at a composition.
pub fn eppf_ewens(c: &Composition, theta: &BigRational) -> Result<BigRational> {
    Ok(Ewens::new(theta.clone())?.p(c.parts()))
}

/// `p(parts) − Σ p(parts with one more element)` over every way of adding
/// the next element (joining block `i`, or opening a new block).
pub fn eppf_addition_residual(p: &dyn Eppf, c: &Composition) -> BigRational {
    let parts = c.parts();
    let mut total = BigRational::zero();
    for i in 0..parts.len() {
        let mut q = parts.to_vec();
        q[i] += 1;
        total += p.p(&q);
    }
    let mut q = parts.to_vec();
    q.push(1);
    total += p.p(&q);
    p.p(parts) - total
}

/// Cycle label of each element (`0`-based elements, labels in `0..cycles`).
fn cycle_labels(perm: &[usize], label: &mut [usize]) -> usize {
    let n = perm.len();
    label.iter_mut().for_each(|l| *l = usize::MAX);
    let mut c = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        let mut i = s;
        while label[i] == usize::MAX {
            label[i] = c;
            i = perm[i];
        }
        c += 1;
    }
    c
}

/// Union (as a bitmask over cycle labels) of the first `k` cycles met when
/// scanning elements in the given order.
fn first_k_union(label: &[usize], k: usize, order: impl Iterator<Item = usize>) -> u64 {
    let mut mask = 0u64;
    let mut seen = 0;
    for i in order {
        if seen == k {
            break;
        }
        let b = 1u64 << label[i];
        if mask & b == 0 {
            mask |= b;
            seen += 1;
        }
    }
    mask
}

/// Does the union of the first `k` cycles in order of least elements equal
/// the union of the first `k` cycles in order of greatest elements?
pub fn same_first_k_cycles(perm: &[usize], k: usize) -> bool {
    let mut label = vec![0; perm.len()];
    cycle_labels(perm, &mut label);
    let n = perm.len();
    first_k_union(&label, k, 0..n) == first_k_union(&label, k, (0..n).rev())
}

fn next_permutation(a: &mut [usize]) -> bool {
    let n = a.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Visit every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    loop {
        f(&a);
        if !next_permutation(&mut a) {
            break;
        }
    }
}

/// Number of permutations of `[n]` with `c` cycles for which the event holds,
/// indexed by `c`.
pub fn ukn_counts(k: usize, n: usize) -> Result<Vec<u64>> {
    if k == 0 || k > n {
        return Err(Error::domain("need 1 <= k <= n"));
    }
    if n > BRUTE_FORCE_MAX_N {
        return Err(Error::Resource(alloc::format!("enumeration limited to n <= {BRUTE_FORCE_MAX_N}")));
    }
    let mut counts = vec![0u64; n + 1];
    let mut label = vec![0; n];
    for_each_permutation(n, |p| {
        let c = cycle_labels(p, &mut label);
        if first_k_union(&label, k, 0..n) == first_k_union(&label, k, (0..n).rev()) {
            counts[c] += 1;
        }
    });
    Ok(counts)
}

/// `u_{k:n}` under Ewens(θ) by enumerating all `n!` permutations, weighting
/// each by `θ^{#cycles}/(θ)_n`.
pub fn brute_force_ukn(k: usize, n: usize, theta: &BigRational) -> Result<BigRational> {
    if !theta.is_positive() {
        return Err(Error::domain("theta must be positive"));
    }
    let counts = ukn_counts(k, n)?;
    let mut total = BigRational::zero();
    let mut tp = BigRational::one();
    for &c in counts.iter() {
        total += &tp * rat_int(c as i64);
        tp *= theta;
    }
    Ok(total / rising(theta, n))
}

struct Memo<'a> {
    p: &'a dyn Eppf,
    cache: RefCell<BTreeMap<Vec<usize>, BigRational>>,
}

impl Memo<'_> {
    fn get(&self, parts: &[usize]) -> BigRational {
        if let Some(v) = self.cache.borrow().get(parts) {
            return v.clone();
        }
        let v = self.p.p(parts);
        self.cache.borrow_mut().insert(parts.to_vec(), v.clone());
        v
    }
}

/// The five kinds of terms making up `u_{2:n}`, in order.
pub fn u2n_terms(n: usize, p: &dyn Eppf) -> Result<[BigRational; 5]> {
    if n < 3 {
        return Err(Error::domain("u2n needs n >= 3"));
    }
    let m = Memo { p, cache: RefCell::new(BTreeMap::new()) };
    let t1 = m.get(&[n]);
    let t2 = m.get(&[n - 1, 1]) * rat_int(n as i64 - 2);
    let mut t3 = BigRational::zero();
    let mut t5 = BigRational::zero();
    for j in 2..n {
        for k in j + 1..n {
            t3 += m.get(&[j - 1 + n - k, 2]);
            t5 += m.get(&[j, n - k + 1]);
        }
    }
    let mut t4 = BigRational::zero();
    for j in 1..n {
        t4 += m.get(&[j, n - j]);
    }
    Ok([t1, t2, t3, t4, t5])
}

/// `u_{2:n} = p(n) + (n−2)p(n−1,1) + Σ_{1<j<k<n} p(j−1+n−k,2) + Σ_j p(j,n−j)
/// + Σ_{1<j<k<n} p(j,n−k+1)`.
pub fn u2n_formula(n: usize, p: &dyn Eppf) -> Result<BigRational> {
    Ok(u2n_terms(n, p)?.into_iter().fold(BigRational::zero(), |a, b| a + b))
}

/// `Σ_{h=2}^{n−2} (h−1)p(h,2) − [p(2) − p(n) − (n−2)p(n−1,1)]·p(2)`, which
/// vanishes for the Ewens family.
pub fn noninterference_check(n: usize, p: &dyn Eppf) -> Result<BigRational> {
    if n < 4 {
        return Err(Error::domain("non-interference check needs n >= 4"));
    }
    let mut lhs = BigRational::zero();
    for h in 2..=n - 2 {
        lhs += p.p(&[h, 2]) * rat_int(h as i64 - 1);
    }
    let p2 = p.p(&[2]);
    let rhs = (&p2 - p.p(&[n]) - p.p(&[n - 1, 1]) * rat_int(n as i64 - 2)) * &p2;
    Ok(lhs - rhs)
}

/// The double sum `Σ_{1<j<k<n} p(j−1+n−k,2)` regrouped by `h = j−1+n−k`,
/// minus the regrouped single sum; zero for every EPPF.
pub fn regrouping_residual(n: usize, p: &dyn Eppf) -> Result<BigRational> {
    let t3 = u2n_terms(n, p)?[2].clone();
    let mut single = BigRational::zero();
    for h in 2..=n.saturating_sub(2) {
        single += p.p(&[h, 2]) * rat_int(h as i64 - 1);
    }
    Ok(t3 - single)
}

/// `lim u_{2:n}` for Ewens(θ) by two routes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct U2Limit {
    /// `(1+θ)^{−2} + Σ_{j≥2} θ(1)_{j−1}/((θ+j−1)(θ+1)_j)`.
    pub series: Bounded,
    /// `(1+θ)^{−2} + (₃F₂(1,1,θ; θ+1,θ+2; 1) − 1)/(1+θ)`.
    pub hypergeometric: Bounded,
}

pub fn u2_limit(theta: f64) -> Result<U2Limit> {
    if !(theta > 0.0) {
        return Err(Error::domain("theta must be positive"));
    }
    let head = 1.0 / ((1.0 + theta) * (1.0 + theta));
    let head = Bounded::new(head, 2.0 * f64::EPSILON * head);
    // (1)_{j−1}/(θ+1)_j = Γ(θ+1)·Γ(j)/Γ(θ+1+j)
    let g = gamma(theta + 1.0)?;
    let w = Weight::power(0.0)
        .with_shift(theta - 1.0)
        .with_gamma_ratio(0.0, theta + 1.0)
        .scaled(theta * g.value);
    let s = NestedSum::new(2.0, true, vec![w]).eval()?;
    let s = Bounded::new(s.value, s.bound + s.value.abs() * g.rel_error());
    let f = hyp3f2_unit(1.0, 1.0, theta, theta + 1.0, theta + 2.0)?;
    let h = (f - Bounded::exact(1.0)).scale(1.0 / (1.0 + theta));
    Ok(U2Limit { series: head + s, hypergeometric: head + h })
}

/// Catalan's constant as `½ ₃F₂(1,1,½; 3/2,3/2; 1)`.
pub fn catalan_hypergeometric() -> Result<Bounded> {
    Ok(hyp3f2_unit(1.0, 1.0, 0.5, 1.5, 1.5)?.scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn ew(p: i64, q: i64) -> Ewens {
        Ewens::new(rat(p, q)).unwrap()
    }

    #[test]
    fn eppf_values() {
        let c = Composition::new(vec![2, 1]).unwrap();
        assert_eq!(eppf_ewens(&c, &rat(1, 1)).unwrap(), rat(1, 6));
        let e = ew(3, 1);
        assert_eq!(e.p(&[2]), rat(1, 4));
        assert_eq!(e.p(&[4]), rat(6, 4 * 5 * 6));
        assert!(Composition::new(vec![1, 0]).is_err());
        let py = PitmanYor::new(rat(0, 1), rat(2, 1)).unwrap();
        assert_eq!(py.p(&[3, 1, 2]), ew(2, 1).p(&[3, 1, 2]));
    }

    #[test]
    fn addition_rule() {
        let e = ew(1, 2);
        let py = PitmanYor::new(rat(1, 2), rat(1, 2)).unwrap();
        for parts in [vec![1], vec![2, 1], vec![1, 1, 3]] {
            let c = Composition::new(parts).unwrap();
            assert!(eppf_addition_residual(&e, &c).is_zero());
            assert!(eppf_addition_residual(&py, &c).is_zero());
        }
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(brute_force_ukn(2, 3, &rat(1, 1)).unwrap(), rat(5, 6));
        for n in 2..=6 {
            assert_eq!(brute_force_ukn(1, n, &rat(1, 1)).unwrap(), rat(1, 2));
            assert_eq!(brute_force_ukn(1, n, &rat(2, 1)).unwrap(), rat(1, 3));
        }
        assert_eq!(ukn_counts(1, 4).unwrap().iter().sum::<u64>(), 12);
        assert!(brute_force_ukn(1, 11, &rat(1, 1)).is_err());
    }

    #[test]
    fn five_kinds() {
        let t = u2n_terms(3, &ew(1, 1)).unwrap();
        assert_eq!(t, [rat(1, 3), rat(1, 6), rat(0, 1), rat(1, 3), rat(0, 1)]);
        for n in 4..=7 {
            for th in [rat(1, 2), rat(1, 1), rat(2, 1)] {
                let e = Ewens::new(th.clone()).unwrap();
                assert_eq!(u2n_formula(n, &e).unwrap(), brute_force_ukn(2, n, &th).unwrap());
            }
        }
    }

    #[test]
    fn noninterference() {
        for n in 4..=9 {
            assert!(noninterference_check(n, &ew(1, 2)).unwrap().is_zero());
            assert!(regrouping_residual(n, &ew(1, 1)).unwrap().is_zero());
        }
        let py = PitmanYor::new(rat(1, 2), rat(1, 2)).unwrap();
        assert!(!noninterference_check(4, &py).unwrap().is_zero());
        assert!(regrouping_residual(6, &py).unwrap().is_zero());
    }

    #[test]
    fn limit_routes() {
        let z2 = core::f64::consts::PI * core::f64::consts::PI / 6.0;
        let u = u2_limit(1.0).unwrap();
        assert!((u.series.value - (z2 - 1.25)).abs() < 1e-12, "{u:?}");
        assert!((u.hypergeometric.value - (z2 - 1.25)).abs() < 1e-12, "{u:?}");
        let h = u2_limit(0.5).unwrap();
        assert!(h.series.agrees_with(&h.hypergeometric, 1e-12), "{h:?}");
        let g = catalan_hypergeometric().unwrap();
        assert!((g.value - 0.915_965_594_177_219).abs() < 1e-13, "{g:?}");
    }
}
