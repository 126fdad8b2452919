use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::Rational;

/// Exact bounds `lo < π < hi` from `terms` terms of each arctangent series
/// in `π = 16 arctan(1/5) − 4 arctan(1/239)`.
///
/// Each alternating series is truncated with error at most its first
/// omitted term; the width shrinks roughly by 25 per term.
pub fn machin_bounds(terms: u32) -> (Rational, Rational) {
    let (s5, e5) = arctan_inv(5, terms);
    let (s239, e239) = arctan_inv(239, terms);
    let mid: Rational = s5 * Rational::from_integer(16.into()) - s239 * Rational::from_integer(4.into());
    let err: Rational = e5 * Rational::from_integer(16.into()) + e239 * Rational::from_integer(4.into());
    (&mid - &err, mid + err)
}

/// Partial sum of `arctan(1/x)` and a bound on the omitted tail.
fn arctan_inv(x: i64, terms: u32) -> (Rational, Rational) {
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut power = BigInt::from(x);
    let mut sum = Rational::zero();
    for k in 0..terms {
        let term = Rational::new(BigInt::one(), &power * BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &x2;
    }
    let tail = Rational::new(BigInt::one(), power * BigInt::from(2 * terms + 1));
    (sum, tail)
}

/// Smallest number of terms whose bounds are narrower than `2^{-bits}`.
pub fn machin_terms_for(bits: u64) -> u32 {
    // 25^k ≥ 2^{bits + 7} suffices for the 16/5 leading error.
    ((bits + 7) / 4 + 1) as u32
}
