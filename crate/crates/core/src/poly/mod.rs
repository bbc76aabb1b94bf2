//! Exact arithmetic substrate: rationals, monomials and their orders, sparse
//! polynomials, presented rings, and the polynomial parser.

mod monomial;
pub mod parse;
mod polynomial;
mod ring;
mod signature;

pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_polynomial, PolyExpr};
pub use polynomial::{multiply, Polynomial, Term};
pub use ring::PresentedRing;
pub use signature::{compare_monomials, RingSignature};

pub(crate) use polynomial::merge_add;

/// Exact rational numbers, always held in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;
