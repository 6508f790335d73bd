//! Renewal sequences: the `u ↔ f` recursion, Kaluza's condition, and the
//! family `u_k = Σ_n n^{−k}/q(n)` for a quadratic `q`.

use crate::precision::{Bounded, Precision, Sum};
use crate::scalar::Scalar;
use crate::special::{digamma, hurwitz_zeta, polygamma, zeta_gf, zeta_int, EULER_GAMMA};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// `f_k = u_k − Σ_{j=1}^{k−1} f_j u_{k−j}` for `k = 1..=k_max`. The result
/// has `f[0] = 0` so that `f[k]` is the mass at `k`.
pub fn u_to_f<T: Scalar>(u: &[T], k_max: usize) -> Result<Vec<T>> {
    if u.len() <= k_max {
        return Err(Error::domain("u must be defined up to k_max"));
    }
    let mut f = vec![T::zero(); k_max + 1];
    for k in 1..=k_max {
        let mut s = u[k].clone();
        for j in 1..k {
            s = s - f[j].clone() * u[k - j].clone();
        }
        f[k] = s;
    }
    Ok(f)
}

/// `u_0 = 1`, `u_k = Σ_{j=1}^{k} f_j u_{k−j}`. `f[0]` is ignored.
pub fn f_to_u<T: Scalar>(f: &[T], k_max: usize) -> Result<Vec<T>> {
    if f.len() <= k_max {
        return Err(Error::domain("f must be defined up to k_max"));
    }
    let mut u = vec![T::one()];
    for k in 1..=k_max {
        let mut s = T::zero();
        for j in 1..=k {
            s = s + f[j].clone() * u[k - j].clone();
        }
        u.push(s);
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KaluzaReport {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

/// Checks `u_k² ≤ u_{k−1} u_{k+1}` (up to `slack`) for `1 ≤ k ≤ k_max`.
pub fn kaluza_check(u: &[f64], k_max: usize, slack: f64) -> Result<KaluzaReport> {
    if u.len() < k_max + 2 {
        return Err(Error::domain("u must be defined up to k_max + 1"));
    }
    let first = (1..=k_max).find(|&k| u[k] * u[k] > u[k - 1] * u[k + 1] + slack);
    Ok(KaluzaReport { holds: first.is_none(), first_violation: first })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Roots {
    Real(f64, f64),
    /// `re ± i·im`, `im > 0`.
    Complex { re: f64, im: f64 },
}

/// `q(n) = a n² + b n + c = a (n − r₁)(n − r₂)`, positive on `n = 1, 2, …`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticQ {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub roots: Roots,
}

fn is_positive_integer(x: f64) -> bool {
    x >= 1.0 && libm::floor(x) == x
}

impl QuadraticQ {
    pub fn from_coeffs(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a > 0.0) || !b.is_finite() || !c.is_finite() {
            return Err(Error::domain("q needs a > 0 and finite coefficients"));
        }
        let disc = b * b - 4.0 * a * c;
        let roots = if disc >= 0.0 {
            // numerically stable root pair
            let sq = libm::sqrt(disc);
            let t = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
            let (r1, r2) = if t == 0.0 { (0.0, 0.0) } else { (t / a, c / t) };
            Roots::Real(r1.min(r2), r1.max(r2))
        } else {
            Roots::Complex { re: -b / (2.0 * a), im: libm::sqrt(-disc) / (2.0 * a) }
        };
        let q = QuadraticQ { a, b, c, roots };
        q.validate()?;
        Ok(q)
    }

    /// The normalized quadratic (`Σ 1/q(n) = 1`) with real roots `r₁, r₂`.
    pub fn from_roots(r1: f64, r2: f64) -> Result<Self> {
        let a = normalize_a(r1, r2)?;
        let q = QuadraticQ {
            a,
            b: -a * (r1 + r2),
            c: a * r1 * r2,
            roots: Roots::Real(r1.min(r2), r1.max(r2)),
        };
        q.validate()?;
        Ok(q)
    }

    /// The normalized quadratic with roots `re ± i·im`.
    pub fn from_complex_roots(re: f64, im: f64) -> Result<Self> {
        if !(im > 0.0) {
            return Err(Error::domain("complex roots need im > 0"));
        }
        let a = normalize_a_complex(re, im)?;
        let q = QuadraticQ { a, b: -2.0 * a * re, c: a * (re * re + im * im), roots: Roots::Complex { re, im } };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        if let Roots::Real(r1, r2) = self.roots {
            if is_positive_integer(r1) || is_positive_integer(r2) {
                return Err(Error::domain("q has a root at a positive integer"));
            }
            let lo = libm::ceil(r1.max(1.0));
            if lo <= r2 {
                return Err(Error::domain("q is not positive on the positive integers"));
            }
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.a * x + self.b) * x + self.c
    }

    /// Largest root modulus.
    fn radius(&self) -> f64 {
        match self.roots {
            Roots::Real(r1, r2) => r1.abs().max(r2.abs()),
            Roots::Complex { re, im } => libm::hypot(re, im),
        }
    }

    /// `ψ(1−r₁) + ψ(1−r₂)`.
    fn digamma_pair(&self) -> Result<Bounded> {
        match self.roots {
            Roots::Real(r1, r2) => Ok(digamma(1.0 - r1)? + digamma(1.0 - r2)?),
            Roots::Complex { re, im } => {
                let (v, b) = digamma_complex(Complex64::new(1.0 - re, -im))?;
                Ok(Bounded::new(2.0 * v.re, 2.0 * b))
            }
        }
    }
}

/// `a` making `Σ 1/q(n) = 1` for `q = a(n−r₁)(n−r₂)`:
/// `(ψ(1−r₂) − ψ(1−r₁))/(r₁ − r₂)`, or `ψ′(1−r₁)` for a double root.
pub fn normalize_a(r1: f64, r2: f64) -> Result<f64> {
    if is_positive_integer(r1) || is_positive_integer(r2) {
        return Err(Error::domain("root at a positive integer"));
    }
    if r1 == r2 {
        return Ok(polygamma(1, 1.0 - r1)?.value);
    }
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    Ok((digamma(1.0 - hi)?.value - digamma(1.0 - lo)?.value) / (lo - hi))
}

/// Complex-root version of [`normalize_a`]: `−Im ψ(1−r₁)/Im r₁`.
pub fn normalize_a_complex(re: f64, im: f64) -> Result<f64> {
    let (p, _) = digamma_complex(Complex64::new(1.0 - re, -im))?;
    Ok(-p.im / im)
}

/// ψ at a complex point off the real poles: upward recurrence to `Re z ≥ 10`
/// and the asymptotic expansion.
fn digamma_complex(z: Complex64) -> Result<(Complex64, f64)> {
    if z.im == 0.0 {
        let d = digamma(z.re)?;
        return Ok((Complex64::new(d.value, 0.0), d.bound));
    }
    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.re < 10.0 {
        acc -= w.inv();
        w += 1.0;
    }
    let inv2 = (w * w).inv();
    let mut pw = inv2;
    let mut s = w.ln() - 0.5 * w.inv();
    for j in 1..=10 {
        s -= crate::special::bernoulli(2 * j) / (2 * j) as f64 * pw;
        pw *= inv2;
    }
    let v = acc + s;
    let bound = (crate::special::bernoulli(22) / 22.0).abs() * pw.norm() + 8.0 * f64::EPSILON * (v.norm() + 1.0);
    Ok((v, bound))
}

/// Number of direct terms and expansion order for the `Σ n^{−k}/q(n)` tail.
const TAIL_ORDER: usize = 40;

/// `u_k = Σ_{n≥1} n^{−k}/q(n)` for `k = 0..=k_max`, without a normalization check.
///
/// Terms `n ≤ N` are summed directly. Beyond, `1/q(n) = (a n²)^{−1} Σ_j e_j n^{−j}`
/// with `e_j = −(b/a) e_{j−1} − (c/a) e_{j−2}`; since `|e_j| ≤ (j+1)ρ^j` for the
/// root radius `ρ`, truncating at `J` leaves at most
/// `(J+2) x^{J+1}/(1−x)² · ζ(k+2, N+1)/a` with `x = ρ/(N+1)`.
pub fn quadratic_moments(q: &QuadraticQ, k_max: usize) -> Result<Vec<Bounded>> {
    let rho = q.radius();
    let n = libm::ceil((4.0 * rho).max(64.0)) as usize;
    let beta = q.b / q.a;
    let gamma = q.c / q.a;
    let mut e = vec![0.0; TAIL_ORDER + 1];
    e[0] = 1.0;
    for j in 1..=TAIL_ORDER {
        e[j] = -beta * e[j - 1] - if j >= 2 { gamma * e[j - 2] } else { 0.0 };
    }
    let x = rho / (n as f64 + 1.0);
    let jf = TAIL_ORDER as f64;
    let remainder_factor = (jf + 2.0) * libm::pow(x, jf + 1.0) / ((1.0 - x) * (1.0 - x));
    let mut out = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let mut acc = Sum::new();
        for m in (1..=n).rev() {
            let mf = m as f64;
            acc.add(libm::pow(mf, -(k as f64)) / q.eval(mf));
        }
        let start = n as f64 + 1.0;
        let mut tail = Sum::new();
        let mut tail_err = 0.0;
        for (j, ej) in e.iter().enumerate() {
            if *ej == 0.0 {
                continue;
            }
            let z = hurwitz_zeta((k + 2 + j) as f64, start)?;
            tail.add(ej * z.value);
            tail_err += ej.abs() * z.bound;
        }
        let lead = hurwitz_zeta((k + 2) as f64, start)?.value;
        let v = acc.value() + tail.value() / q.a;
        let bound = (tail_err + tail.rounding_bound() + remainder_factor * lead) / q.a
            + acc.rounding_bound()
            + 2.0 * f64::EPSILON * v.abs();
        out.push(Bounded::new(v, bound));
    }
    Ok(out)
}

/// Default tolerance on `|u₀ − 1|` for a normalized `q`.
pub const NORMALIZATION_TOL: f64 = 1e-10;

/// The renewal sequence of a normalized quadratic; errors with the computed
/// `u₀` when `|u₀ − 1| > tol`.
pub fn quadratic_renewal(q: &QuadraticQ, k_max: usize, tol: f64) -> Result<Vec<Bounded>> {
    let u = quadratic_moments(q, k_max)?;
    if (u[0].value - 1.0).abs() > tol {
        return Err(Error::NotNormalized { u0: u[0].value });
    }
    Ok(u)
}

/// [`quadratic_renewal`] with the tolerance taken from `prec` when it is looser
/// than the default.
pub fn quadratic_renewal_prec(q: &QuadraticQ, k_max: usize, prec: &Precision) -> Result<Vec<Bounded>> {
    quadratic_renewal(q, k_max, NORMALIZATION_TOL.max(prec.rel_tol))
}

/// `|c u_k + b u_{k−1} + a u_{k−2} − ζ(k)|` for `k = 2..=k_max`, with the
/// combined error budget of each residual.
pub fn urec_residuals(q: &QuadraticQ, u: &[Bounded]) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for k in 2..u.len() {
        let lhs = u[k].scale(q.c) + u[k - 1].scale(q.b) + u[k - 2].scale(q.a);
        let z = zeta_int(k as i64)?;
        let r = lhs - z;
        out.push((r.value.abs(), r.bound));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticStats {
    pub mean: Bounded,
    pub variance: Bounded,
    pub u_inf: Bounded,
    pub u1: Bounded,
}

/// Mean `q(1)`, variance `(4−q(1))a − q(−1) + q(1)(c + 2γ + ψ(1−r₁) + ψ(1−r₂))`,
/// limit `1/q(1)` and `u₁ = (−b + 2γ + ψ(1−r₁) + ψ(1−r₂))/(2c)` of the
/// inter-renewal law of a normalized `q`.
pub fn quadratic_stats(q: &QuadraticQ) -> Result<QuadraticStats> {
    let q1 = q.eval(1.0);
    let qm1 = q.eval(-1.0);
    let p = q.digamma_pair()?;
    let two_gamma = 2.0 * EULER_GAMMA;
    let eps = f64::EPSILON;
    let var_v = (4.0 - q1) * q.a - qm1 + q1 * (q.c + two_gamma + p.value);
    let var_b = q1.abs() * p.bound + 8.0 * eps * (q1.abs() * (q.c.abs() + 2.0 + p.value.abs()) + qm1.abs() + 4.0 * q.a);
    let u1 = if q.c != 0.0 {
        let v = (-q.b + two_gamma + p.value) / (2.0 * q.c);
        Bounded::new(v, p.bound / (2.0 * q.c).abs() + 8.0 * eps * v.abs())
    } else {
        Bounded::new(f64::NAN, f64::INFINITY)
    };
    Ok(QuadraticStats {
        mean: Bounded::new(q1, 4.0 * eps * q1.abs()),
        variance: Bounded::new(var_v, var_b),
        u_inf: Bounded::new(1.0 / q1, 4.0 * eps / q1.abs()),
        u1,
    })
}

/// `U(z) = (c u₀ + (b u₀ + c u₁) z + G(z)) / q(z)` with `u₀ = 1`.
pub fn quadratic_genfun(q: &QuadraticQ, u1: f64, z: f64) -> Result<Bounded> {
    let g = zeta_gf(z)?;
    let qz = q.eval(z);
    let v = (q.c + (q.b + q.c * u1) * z + g.value) / qz;
    Ok(Bounded::new(v, g.bound / qz.abs() + 8.0 * f64::EPSILON * v.abs()))
}

/// `U(z)(1 − F(z)) − 1` with `F` truncated at `f.len()−1`; `f` is assumed
/// non-negative with total mass at most 1, so the dropped part of `F(z)` is at
/// most `(1 − Σ f) |z|^{K+1}`.
pub fn genfun_residual(u_z: Bounded, f: &[f64], z: f64) -> Bounded {
    let mut fz = Sum::new();
    let mut mass = Sum::new();
    let mut zk = 1.0;
    for fk in f.iter().skip(1) {
        zk *= z;
        fz.add(fk * zk);
        mass.add(*fk);
    }
    let kk = f.len() as f64;
    let tail = (1.0 - mass.value()).max(0.0) * libm::pow(z.abs(), kk);
    let one_minus_f = Bounded::new(1.0 - fz.value(), tail + fz.rounding_bound());
    u_z * one_minus_f - Bounded::exact(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combo::{uk_closed, uk_series};
    use crate::scalar::rat;
    use num_rational::BigRational;

    fn example() -> QuadraticQ {
        QuadraticQ::from_coeffs(0.5, 1.5, 1.0).unwrap()
    }

    #[test]
    fn gem_one_first_f() {
        let u: Vec<BigRational> = (0..3).map(|k| uk_closed(k).c0().clone()).collect();
        // only the rational parts; the ζ part is checked numerically below
        assert_eq!(u[1], rat(1, 2));
        let un: Vec<f64> = (0..6).map(|k| uk_closed(k).eval().unwrap().value).collect();
        let f = u_to_f(&un, 5).unwrap();
        assert!((f[1] - 0.5).abs() < 1e-16);
        let z2 = zeta_int(2).unwrap().value;
        assert!((f[2] - (z2 - 1.5)).abs() < 1e-15);
    }

    #[test]
    fn trivial_sequences() {
        let u = vec![1.0; 6];
        let f = u_to_f(&u, 5).unwrap();
        assert_eq!(f[1], 1.0);
        assert!(f[2..].iter().all(|&x| x == 0.0));
        let mut f = vec![0.0; 6];
        f[1] = 1.0;
        assert_eq!(f_to_u(&f, 5).unwrap(), vec![1.0; 6]);
        let geo: Vec<f64> = (0..8).map(|k| if k == 0 { 0.0 } else { libm::pow(0.5, k as f64) }).collect();
        assert_eq!(f_to_u(&geo, 7).unwrap()[1], 0.5);
    }

    #[test]
    fn kaluza_examples() {
        let r = kaluza_check(&[1.0, 0.5, 0.4, 0.1], 2, 0.0).unwrap();
        assert_eq!(r, KaluzaReport { holds: false, first_violation: Some(2) });
        let u: Vec<f64> = (0..=21).map(|k| uk_closed(k).eval().unwrap().value).collect();
        assert!(kaluza_check(&u, 20, 0.0).unwrap().holds);
    }

    #[test]
    fn example_matches_gem_one() {
        let q = example();
        let u = quadratic_renewal(&q, 20, NORMALIZATION_TOL).unwrap();
        assert!((u[0].value - 1.0).abs() < 1e-14);
        let p = Precision::default();
        for (k, uk) in u.iter().enumerate() {
            let s = uk_series(k as u32, &p);
            assert!((uk.value - s.value).abs() <= uk.bound + s.bound + 1e-15, "k={k}");
        }
        assert!((u[20].value - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn example_stats() {
        let s = quadratic_stats(&example()).unwrap();
        assert!((s.mean.value - 3.0).abs() < 1e-15);
        assert!((s.variance.value - 11.0).abs() < 1e-13, "{}", s.variance.value);
        assert!((s.u_inf.value - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.u1.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn normalization_values() {
        assert!((normalize_a(-1.0, -2.0).unwrap() - 0.5).abs() < 1e-15);
        let z2 = zeta_int(2).unwrap().value;
        assert!((normalize_a(-1.0, -1.0).unwrap() - (z2 - 1.0)).abs() < 1e-15);
        assert_eq!(normalize_a(-0.3, 0.4).unwrap(), normalize_a(0.4, -0.3).unwrap());
        assert!(normalize_a(2.0, -1.0).is_err());
    }

    #[test]
    fn not_normalized_reports_u0() {
        let q = QuadraticQ::from_coeffs(1.0, 0.0, 0.0).unwrap();
        match quadratic_renewal(&q, 3, NORMALIZATION_TOL) {
            Err(Error::NotNormalized { u0 }) => assert!((u0 - zeta_int(2).unwrap().value).abs() < 1e-13),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complex_roots_normalize() {
        let q = QuadraticQ::from_complex_roots(-0.5, 1.2).unwrap();
        let u = quadratic_renewal(&q, 6, NORMALIZATION_TOL).unwrap();
        assert!((u[0].value - 1.0).abs() < 1e-12);
        // direct brute-force oracle for u₀ = Σ 1/q(n)
        let mut s = Sum::new();
        for n in (1..=2_000_000).rev() {
            s.add(1.0 / q.eval(n as f64));
        }
        let tail = 1.0 / (q.a * 2_000_000.0);
        assert!((s.value() + tail - 1.0).abs() < 1e-11);
        let st = quadratic_stats(&q).unwrap();
        assert!((st.u1.value - u[1].value).abs() < 1e-12, "{} {}", st.u1.value, u[1].value);
    }

    #[test]
    fn rejects_nonpositive_q() {
        assert!(QuadraticQ::from_coeffs(1.0, -3.0, 2.0).is_err()); // roots 1, 2
        assert!(QuadraticQ::from_coeffs(1.0, -5.0, 5.5).is_err()); // q(2), q(3) < 0
        assert!(QuadraticQ::from_coeffs(-1.0, 0.0, 1.0).is_err());
    }
}
