//! Scalar special functions.

mod bernoulli;
mod gamma;
mod hyp;
mod series;

pub use bernoulli::{bernoulli, bernoulli_poly};
pub(crate) use bernoulli::factorial;
pub use gamma::{
    digamma, gamma, hurwitz_zeta, ln_gamma, ln_gamma_ratio, pochhammer, polygamma, zeta_int,
    zeta_minus_one, EULER_GAMMA,
};
pub use hyp::hyp3f2_unit;
pub use series::{
    bell_all, bell_complete, bell_scaled, catalan, dirichlet_beta, dirichlet_beta_partial, polylog,
    zeta_gf,
};
