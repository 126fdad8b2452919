//! Order-theoretic computability on uncountable spaces.
//!
//! Bases are enumerated by finite maps ([`codes`]), computations are costed
//! total programs ℕ → ℕ ([`machine`]), and the order structure lives in
//! effectively given domains ([`domains`]). Computable elements and functions
//! ([`elements`]) are r.e. streams of basis codes; [`reals`] builds the
//! interval-domain representation of the reals and [`complexity`] measures
//! how fast those streams gain information.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod codes;
pub mod complexity;
pub mod domains;
pub mod elements;
pub mod machine;
pub mod reals;

/// Natural numbers: codes, indices and program values.
pub type Nat = num_bigint::BigUint;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
