//! Text rendering of exact values.

use effdom_core::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

/// `q` with `digits` decimals, rounded down (`up = false`) or up.
pub fn decimal(q: &Rational, digits: usize, up: bool) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = q.numer() * &scale;
    let (mut int, rem) = scaled.div_mod_floor(q.denom());
    if up && rem != BigInt::from(0) {
        int += 1;
    }
    let negative = int.is_negative();
    let digits_str = int.abs().to_string();
    let padded = format!("{digits_str:0>width$}", width = digits + 1);
    let (whole, frac) = padded.split_at(padded.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 { format!("{sign}{whole}") } else { format!("{sign}{whole}.{frac}") }
}

/// Number of decimals that resolve a width of `2^{-bits}`.
pub fn digits_for(bits: u32) -> usize {
    (bits as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}
