//! Finite maps between ℕ and the countable carriers used as bases:
//! Cantor pairing, reduced fractions in `[0, 1)`, binary words and rational
//! subintervals of a fixed ambient interval.
//!
//! Every map here is a bijection computed with exact integer arithmetic.

mod arith;
mod fraction;
mod interval;
mod pairing;
mod string;

use alloc::string::String;

pub use fraction::{decode_fraction, decode_unit_closed, encode_fraction, encode_unit_closed};
pub use interval::{decode_interval, encode_interval, Ambient, RatInterval};
pub use pairing::{fst, pair, pair_u64, snd, triple, unpair, untriple};
pub use string::{decode_string, encode_string, BitString};

pub(crate) use arith::totient;

use crate::{Nat, Rational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CodeError {
    #[error("{0} is not a fraction in lowest terms")]
    Unreduced(Rational),
    #[error("{0} lies outside [0, 1)")]
    OutsideUnit(Rational),
    #[error("fraction index {0} exceeds the supported range (u64)")]
    IndexTooLarge(Nat),
    #[error("{0} has a denominator too large to index (limit 2^32)")]
    FractionTooLarge(Rational),
    #[error("interval {interval} is not contained in the ambient {ambient}")]
    OutsideAmbient { interval: RatInterval, ambient: RatInterval },
    #[error("empty interval: lower end {lo} exceeds upper end {hi}")]
    Inverted { lo: Rational, hi: Rational },
    #[error("ambient interval needs A < B, got [{a}, {b}]")]
    DegenerateAmbient { a: Rational, b: Rational },
    #[error("{0:?} is not a binary word")]
    NotBinary(String),
}
