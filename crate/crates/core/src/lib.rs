//! Computational commutative algebra kernel for flatness certification.
//!
//! Layers, bottom-up:
//! - [`poly`]: exact rationals, monomial orders, sparse polynomials,
//!   presented rings and the polynomial parser;
//! - [`groebner`]: division, reduced Gröbner bases, membership, elimination
//!   and kernels of ring maps;
//! - [`homology`]: module Gröbner bases, syzygies, free resolutions, Koszul
//!   complexes and Tor;
//! - [`flatness`]: graph and fibered-product ideals, invariant subalgebras,
//!   ring tensor products and the flat-at-a-point probe;
//! - [`script`]: the `.fc` script language and the bundled reproduction
//!   suite driven by the `flatcert` binary.

pub mod error;
pub mod flatness;
pub mod groebner;
pub mod homology;
pub mod poly;
pub mod script;

pub use error::{Error, ParseError, Position, Result};
pub use poly::{Monomial, MonomialOrder, Polynomial, PresentedRing, Rational, RingSignature};
