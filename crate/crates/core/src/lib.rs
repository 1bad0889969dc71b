//! Exact-arithmetic cluster structures for double Bruhat cells, framed root
//! data and the reductive monoids built from them.
//!
//! Everything here is pure computation over arbitrary-precision rationals;
//! file formats, the command line and the verification suites live in the
//! `vinberg` crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod cartan;
pub mod cluster;
pub mod crystal;
pub mod error;
pub mod group;
pub mod laurent;
pub mod linalg;
pub mod monoid;
pub mod seed;

pub use error::{Error, Result};

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `num / den`.
pub fn qf(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
