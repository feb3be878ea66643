//! Exact rationals, Laurent polynomials in the metric coefficients, and
//! dense linear algebra over ℚ.

mod laurent;
mod matrix;
mod rational;

pub use laurent::{laurent_arith, LaurentOp, LaurentPoly, Monomial};
pub use matrix::{antiinvariant_kernel_dim, rank_and_kernel, QMatrix};
pub use rational::{format_rational, height, parse_rational, rat, Rational};
