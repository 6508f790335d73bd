//! Renewal sequences built from stick-breaking, the weak record chain behind
//! them, and the multiple zeta / iterated harmonic sums that evaluate them.
//!
//! Everything here is `no_std` with `alloc`. Exact values are carried as
//! rational combinations of `1, ζ(2), ζ(3), …` ([`combo::ZetaCombo`]);
//! numeric values come with an error bound ([`precision::Bounded`]) so that
//! two routes to the same quantity can be compared honestly.
//!
//! Module map:
//!
//! * [`special`] – ζ at integers, Hurwitz ζ, ψ and ψ⁽ᵐ⁾, log-gamma,
//!   polylogarithm, Dirichlet β, ₃F₂ at unit argument, Bell polynomials.
//! * [`combo`] – exact zeta combinations and the renewal sequence `u_k`.
//! * [`renewal`] – generic `u ↔ f` machinery and the quadratic family.
//! * [`record`] – the chain `Q̂^{ℓ,θ}`, weak records and empty-interval counts.
//! * [`harmonic`] – iterated harmonic sums, MZVs, multiple Hurwitz ζ, Euler sums.
//! * [`sim`] – seeded Monte Carlo for stick-breaking, chains and permutations.
//! * [`perm`] – exact finite-`n` permutation computations and EPPFs.
//! * [`verify`] – the identity checks, grouped into suites.
//! * [`nested`], [`asym`], [`quad`] – nested-sum engine, asymptotic tails and
//!   quadrature used underneath.
#![no_std]
#![deny(unsafe_code)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod asym;
pub mod combo;
pub mod error;
pub mod harmonic;
pub mod nested;
pub mod perm;
pub mod precision;
pub mod quad;
pub mod record;
pub mod renewal;
pub mod scalar;
pub mod sim;
pub mod special;
pub mod verify;

pub use combo::ZetaCombo;
pub use error::{Error, Result};
pub use precision::{Bounded, Precision};
