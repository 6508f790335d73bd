//! Truncation control and values that carry an error bound.

use core::ops::{Add, Mul, Neg, Sub};

/// Target relative error and a cap on the number of series terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Precision {
    pub fn new(rel_tol: f64, max_terms: usize) -> crate::Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(crate::Error::domain("precision needs rel_tol > 0 and max_terms >= 1"));
        }
        Ok(Precision { rel_tol, max_terms })
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision { rel_tol: 1e-14, max_terms: 10_000_000 }
    }
}

/// A numeric value together with an upper bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounded {
    pub value: f64,
    pub bound: f64,
}

impl Bounded {
    pub const ZERO: Bounded = Bounded { value: 0.0, bound: 0.0 };

    pub fn new(value: f64, bound: f64) -> Self {
        Bounded { value, bound: bound.abs() }
    }

    pub fn exact(value: f64) -> Self {
        Bounded { value, bound: 0.0 }
    }

    pub fn scale(self, c: f64) -> Self {
        Bounded { value: self.value * c, bound: self.bound * c.abs() }
    }

    /// `|self − other| ≤ self.bound + other.bound + slack`.
    pub fn agrees_with(&self, other: &Bounded, slack: f64) -> bool {
        (self.value - other.value).abs() <= self.bound + other.bound + slack
    }

    pub fn rel_error(&self) -> f64 {
        if self.value == 0.0 {
            self.bound
        } else {
            self.bound / self.value.abs()
        }
    }
}

impl Add for Bounded {
    type Output = Bounded;
    fn add(self, o: Bounded) -> Bounded {
        let v = self.value + o.value;
        Bounded { value: v, bound: self.bound + o.bound + f64::EPSILON * v.abs() }
    }
}

impl Sub for Bounded {
    type Output = Bounded;
    fn sub(self, o: Bounded) -> Bounded {
        let v = self.value - o.value;
        Bounded { value: v, bound: self.bound + o.bound + f64::EPSILON * v.abs() }
    }
}

impl Neg for Bounded {
    type Output = Bounded;
    fn neg(self) -> Bounded {
        Bounded { value: -self.value, bound: self.bound }
    }
}

impl Mul for Bounded {
    type Output = Bounded;
    fn mul(self, o: Bounded) -> Bounded {
        let v = self.value * o.value;
        let b = self.bound * o.value.abs() + o.bound * self.value.abs() + self.bound * o.bound;
        Bounded { value: v, bound: b + f64::EPSILON * v.abs() }
    }
}

/// Compensated (Neumaier) summation. The rounding bound it reports is
/// `2·ε·Σ|xᵢ|`, which covers the compensated sum for any realistic length.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl Sum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn rounding_bound(&self) -> f64 {
        2.0 * f64::EPSILON * self.abs
    }

    pub fn bounded(&self) -> Bounded {
        Bounded::new(self.value(), self.rounding_bound())
    }
}

impl core::iter::FromIterator<f64> for Sum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Sum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}
