use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::arith::{coprime_count, isqrt_u128, nth_coprime, prime_factors, totient, totient_sum, totient_sum_near};
use super::CodeError;
use crate::{Nat, Rational};

/// ⌊10¹⁸ · π²/3⌋; `Φ(d) ≈ 3d²/π²` gives the starting denominator guess.
const PI_SQ_OVER_3_E18: u128 = 3_289_868_133_696_452_872;

/// Index → reduced fraction in `[0, 1)`.
///
/// Index 0 is `0`; after that the fractions `k/d` with `gcd(k, d) = 1` and
/// `0 < k < d` are listed by denominator, then numerator:
/// `1/2, 1/3, 2/3, 1/4, 3/4, 1/5, …`. The block for denominator `d` starts
/// at index `Φ(d − 1)`, where `Φ` is the totient summatory function.
///
/// Indices are limited to `u64`, which covers every denominator below 2³².
pub fn decode_fraction(index: &Nat) -> Result<Rational, CodeError> {
    let idx = index
        .to_u64()
        .ok_or_else(|| CodeError::IndexTooLarge(index.clone()))?;
    if idx == 0 {
        return Ok(Rational::zero());
    }
    let (d, first) = locate_block(idx);
    let rank = idx - first + 1;
    let k = nth_coprime(d, rank);
    Ok(Rational::new(BigInt::from(k), BigInt::from(d)))
}

/// Inverse of [`decode_fraction`]; rejects values outside `[0, 1)` and
/// unreduced representations.
pub fn encode_fraction(q: &Rational) -> Result<Nat, CodeError> {
    check_reduced(q)?;
    if q.is_zero() {
        return Ok(Nat::zero());
    }
    if q.is_negative() || q >= &Rational::one() {
        return Err(CodeError::OutsideUnit(q.clone()));
    }
    let too_large = || CodeError::FractionTooLarge(q.clone());
    let d = q.denom().to_u64().ok_or_else(too_large)?;
    let k = q.numer().to_u64().ok_or_else(too_large)?;
    let first = totient_sum(d - 1);
    let rank = coprime_count(k, &prime_factors(d)) as u128;
    let idx = first + rank - 1;
    u64::try_from(idx).map(Nat::from).map_err(|_| too_large())
}

/// Index → rational in the closed interval `[0, 1]`: `0 ↦ 0`, `1 ↦ 1`, and
/// `k ≥ 2` ↦ `decode_fraction(k − 1)`.
pub fn decode_unit_closed(index: &Nat) -> Result<Rational, CodeError> {
    if index.is_zero() {
        Ok(Rational::zero())
    } else if index.is_one() {
        Ok(Rational::one())
    } else {
        decode_fraction(&(index - 1u32))
    }
}

/// Inverse of [`decode_unit_closed`].
pub fn encode_unit_closed(q: &Rational) -> Result<Nat, CodeError> {
    check_reduced(q)?;
    if q.is_zero() {
        Ok(Nat::zero())
    } else if q.is_one() {
        Ok(Nat::one())
    } else {
        encode_fraction(q).map(|i| i + 1u32)
    }
}

fn check_reduced(q: &Rational) -> Result<(), CodeError> {
    let (n, d) = (q.numer(), q.denom());
    if !d.is_positive() || !n.gcd(d).is_one() {
        return Err(CodeError::Unreduced(q.clone()));
    }
    Ok(())
}

/// Finds `d` and `Φ(d − 1)` with `Φ(d − 1) ≤ idx < Φ(d)`.
fn locate_block(idx: u64) -> (u64, u64) {
    let guess = isqrt_u128(idx as u128 * PI_SQ_OVER_3_E18 / 1_000_000_000_000_000_000);
    let (m, mut first) = totient_sum_near((guess as u64).max(2) - 1, 64);
    let mut d = m + 1;
    while first > idx as u128 {
        d -= 1;
        first -= totient(d) as u128;
    }
    loop {
        let next = first + totient(d) as u128;
        if next > idx as u128 {
            break;
        }
        first = next;
        d += 1;
    }
    (d, first as u64)
}
