//! Exact computer algebra for subalgebra bases of quotient polynomial rings
//! and Newton-Okounkov bodies.
//!
//! Everything here is computed in exact rational arithmetic: multivariate
//! polynomials over the rationals with pluggable monomial orders, a Buchberger
//! engine with reduced bases and normal forms, subduction against subalgebra
//! bases (in the ambient ring and in quotients), toric-exponent lattices with
//! the induced quotient valuation, and exact convex hulls and volumes for the
//! resulting Newton-Okounkov bodies.

pub mod error;
pub mod fixtures;
pub mod groebner;
pub mod khovanskii;
pub mod linalg;
pub mod okounkov;
pub mod order;
pub mod poly;
pub mod sagbi;

pub use error::Error;

/// Arbitrary-precision rational scalar used throughout the crate.
pub type Rat = num_rational::BigRational;
/// Arbitrary-precision integer scalar.
pub type Int = num_bigint::BigInt;

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

pub(crate) fn rat_int(n: i64) -> Rat {
    Rat::from(Int::from(n))
}
