//! Nested sums `Σ_{y₁ ⋖ y₂ ⋖ … ⋖ y_k} w₁(y₁) ⋯ w_k(y_k)` over the lattice
//! `y = start, start+1, …`, with `⋖` either `<` (strict) or `≤` (weak).
//!
//! The sum is evaluated from the outermost index inward. Above a cut-off
//! `Y` every partial tail `T_i(y) = Σ_{y' ≥ y} w_i(y') T_{i+1}(y' + d)` is an
//! asymptotic expansion in `y` (see [`crate::asym`]); below it the tails are
//! accumulated by the backward recursion `T_i(y) = w_i(y) T_{i+1}(y+d) + T_i(y+1)`.

use crate::asym::{Series, DEFAULT_LEN};
use crate::precision::{Bounded, Sum};
use crate::{Error, Result};
use alloc::vec;
use alloc::vec::Vec;

/// `scale · y^{−pow} · Π 1/(y+s) · Π Γ(y+a)/Γ(y+b)`, zero below `min_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weight {
    pub scale: f64,
    pub pow: f64,
    pub shifts: Vec<f64>,
    pub gammas: Vec<(f64, f64)>,
    pub min_index: Option<f64>,
}

impl Weight {
    /// `y^{−pow}`.
    pub fn power(pow: f64) -> Self {
        Weight { scale: 1.0, pow, shifts: Vec::new(), gammas: Vec::new(), min_index: None }
    }

    pub fn scaled(mut self, c: f64) -> Self {
        self.scale *= c;
        self
    }

    pub fn with_shift(mut self, s: f64) -> Self {
        self.shifts.push(s);
        self
    }

    pub fn with_gamma_ratio(mut self, a: f64, b: f64) -> Self {
        self.gammas.push((a, b));
        self
    }

    pub fn from_index(mut self, min: f64) -> Self {
        self.min_index = Some(min);
        self
    }

    fn series(&self, len: usize) -> Series {
        let mut s = Series::power(self.pow, len).scale(self.scale);
        for &d in &self.shifts {
            s = s.mul(&Series::inv_shift(d, len));
        }
        for &(a, b) in &self.gammas {
            s = s.mul(&Series::gamma_ratio(a, b, len));
        }
        s
    }

    fn param_scale(&self) -> f64 {
        let mut m = 0.0f64;
        for &d in &self.shifts {
            m = m.max(d.abs());
        }
        for &(a, b) in &self.gammas {
            m = m.max(a.abs()).max(b.abs());
        }
        m
    }
}

/// A nested sum; `weights[0]` sits on the smallest index and the last weight
/// on the largest.
#[derive(Debug, Clone, PartialEq)]
pub struct NestedSum {
    pub start: f64,
    pub strict: bool,
    pub weights: Vec<Weight>,
}

impl NestedSum {
    pub fn new(start: f64, strict: bool, weights: Vec<Weight>) -> Self {
        NestedSum { start, strict, weights }
    }

    pub fn eval(&self) -> Result<Bounded> {
        self.eval_with_cutoff(None)
    }

    /// Evaluate with `M` direct steps below the cut-off (default: chosen from
    /// the parameter sizes).
    pub fn eval_with_cutoff(&self, steps: Option<usize>) -> Result<Bounded> {
        let k = self.weights.len();
        if k == 0 {
            return Ok(Bounded::exact(1.0));
        }
        let len = DEFAULT_LEN;
        let d = if self.strict { 1.0 } else { 0.0 };
        let scale = self
            .weights
            .iter()
            .fold(self.start.abs(), |m, w| m.max(w.param_scale()).max(w.min_index.unwrap_or(0.0)));
        let m = steps.unwrap_or(libm::ceil((30.0 * scale).max(256.0)) as usize);
        let big = self.start + m as f64;

        // Tail expansions T_i at y = Y, outermost first.
        let mut tails: Vec<Series> = vec![Series::power(0.0, len); k + 1];
        for i in (0..k).rev() {
            let f = self.weights[i].series(len).mul(&tails[i + 1].shift(d));
            tails[i] = f.tail_series().map_err(|_| {
                Error::domain("nested sum diverges: the tail at this depth decays too slowly")
            })?;
        }
        let eps = f64::EPSILON;
        let mut sums: Vec<Sum> = Vec::with_capacity(k);
        // err[i] bounds the error of the running value of T_i
        let mut err = vec![0.0; k + 1];
        for i in 0..k {
            let t = tails[i].eval_bounded(big);
            err[i] = t.bound;
            let mut s = Sum::new();
            s.add(t.value);
            sums.push(s);
        }

        // Running Γ ratios for each weight, recurred downward from Y, with
        // their accumulated relative error.
        let mut ratios: Vec<Vec<f64>> = Vec::with_capacity(k);
        let mut ratio_err = vec![0.0; k];
        for (i, w) in self.weights.iter().enumerate() {
            let mut v = Vec::with_capacity(w.gammas.len());
            for &(a, b) in &w.gammas {
                let g = Series::gamma_ratio(a, b, len).eval_bounded(big);
                ratio_err[i] += g.rel_error();
                v.push(g.value);
            }
            ratios.push(v);
        }
        let mut old = vec![0.0; k + 1];
        let mut old_err = vec![0.0; k + 1];
        old[k] = 1.0;
        for j in (0..m).rev() {
            let y = self.start + j as f64;
            for i in 0..k {
                old[i] = sums[i].value();
                old_err[i] = err[i];
            }
            for i in (0..k).rev() {
                let w = &self.weights[i];
                let mut g = 1.0;
                for (r, &(a, b)) in ratios[i].iter_mut().zip(&w.gammas) {
                    *r *= (y + b) / (y + a);
                    g *= *r;
                }
                ratio_err[i] += 4.0 * eps * w.gammas.len() as f64;
                if w.min_index.is_some_and(|mi| y < mi) {
                    continue;
                }
                let mut wy = w.scale * g * libm::pow(y, -w.pow);
                for &s in &w.shifts {
                    wy /= y + s;
                }
                let w_rel = ratio_err[i] + eps * (4.0 + 2.0 * w.shifts.len() as f64 + w.gammas.len() as f64);
                let (next, next_err) = if i + 1 == k {
                    (1.0, 0.0)
                } else if self.strict {
                    (old[i + 1], old_err[i + 1])
                } else {
                    (sums[i + 1].value(), err[i + 1])
                };
                let term = wy * next;
                sums[i].add(term);
                err[i] += wy.abs() * next_err + term.abs() * (w_rel + eps) + eps * sums[i].value().abs();
            }
        }
        let delta = err[0];
        let v = sums[0].value();
        if !v.is_finite() {
            return Err(Error::domain("nested sum hit a pole of its weights"));
        }
        Ok(Bounded::new(v, delta + 2.0 * f64::EPSILON * v.abs()))
    }
}
