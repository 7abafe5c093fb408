//! Exact arithmetic substrate: sparse multivariate polynomials and rational
//! functions over arbitrary-precision rationals.
//!
//! Every coefficient that appears anywhere in the crate is a [`ScalarField`]:
//! a quotient of two [`Polynomial`]s in the chart coordinates. Equality of
//! scalar fields is decided by cross-multiplication of the stored
//! representatives, so it never depends on polynomial GCD cancellation.

mod gcd;
mod poly;
mod scalar;

pub use gcd::poly_gcd;
pub use poly::{Polynomial, Vars};
pub use scalar::ScalarField;

/// Arbitrary-precision rational, reduced, with positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued [`Rational`].
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for the rational n/d. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
