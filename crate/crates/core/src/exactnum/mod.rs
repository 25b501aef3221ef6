//! Exact scalars, generalized polynomials and rational linear algebra.
//!
//! Nothing in this crate rounds: coefficients are arbitrary-precision
//! rationals, exponents of generalized polynomials are rationals, and
//! every matrix routine works by exact Gauss-Jordan elimination.

mod matrix;
mod poly;
mod rational;
mod unipoly;

pub use matrix::{span_contains, RatMatrix};
pub use poly::GenPolynomial;
pub use rational::{
    binomial, factorial, falling_factorial, fmt_power, int, is_integer, is_natural,
    parse_rational, rat, to_natural, Rational,
};
pub use unipoly::UniPoly;
