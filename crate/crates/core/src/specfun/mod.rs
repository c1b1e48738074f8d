//! Special functions: Gamma family, classical orthogonal polynomials,
//! Bessel functions of real and complex argument, and `0F1`.
//!
//! Every routine is a pure function of its arguments. Non-finite inputs are
//! rejected with [`Error::Domain`](crate::Error::Domain).

mod bessel_complex;
mod bessel_real;
mod gamma;
mod hyp;
mod poly;

pub use bessel_complex::{bessel_g_scaled, bessel_i_complex, bessel_i_complex_scaled};
pub use bessel_real::{bessel_i, bessel_i_scaled, bessel_j, bessel_k, bessel_k_scaled};
pub use gamma::{gamma, log_gamma, pochhammer};
pub use hyp::hyp0f1;
pub use poly::{gegenbauer, gegenbauer_sequence, laguerre, laguerre_explicit, laguerre_sequence};

pub(crate) use gamma::{ln_factorial, ln_gamma};
pub(crate) use poly::{gegenbauer_fill, laguerre_fill};
