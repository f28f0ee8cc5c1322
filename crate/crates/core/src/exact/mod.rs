//! Exact arithmetic kernels: rationals, Laurent polynomials in `X = q^{-s}`
//! and log-linear reals.

pub mod laurent;
pub mod loglin;
pub mod rat;

pub use laurent::{factor_prime_power, laurent_special_values, LaurentPoly};
pub use loglin::{loglin_reduce_eq, loglin_reduce_eq_tol, LogLinear, REAL_PART_TOL};
pub use rat::{int_valuation, Rat};
