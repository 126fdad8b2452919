use alloc::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::codes::{encode_interval, Ambient, RatInterval};
use crate::domains::{DomainRef, IntervalDomain, LimitDescriptor};
use crate::elements::ComputableElement;
use crate::machine::{Enumerator, MachineError, Meter};
use crate::Rational;

/// Number of guard bits in the dyadic rounding of the series bounds.
pub const GUARD_BITS: u64 = 8;

/// Binary precision of emission `n`: `8 + bits(n)`, so `2^{-Q} < 1/(256 n)`
/// and the grids refine as `n` grows.
pub fn pi_precision(n: u64) -> u64 {
    GUARD_BITS + (64 - n.leading_zeros() as u64)
}

/// Enclosure `n` of π from the grouped series
/// `a_n = 8 Σ_{k=0}^{n} 1/((4k+1)(4k+3))`.
///
/// Each term beyond `k` is below `½(1/k − 1/(k+1))`, so the tail after `a_n`
/// is below `1/(2(n+1))`. The exact partial sum is rounded down and
/// `a_n + 1/(2(n+1))` rounded up on the `2^{-Q}` grid, and the result is
/// clipped to `[3, 4]`. Because `a_n` grows, `a_n + 1/(2(n+1))` shrinks and
/// the grids refine, consecutive enclosures are nested. The width is at
/// most `1/(2(n+1)) + 2^{1-Q}`.
pub fn pi_enclosure(n: u64, meter: &mut Meter) -> Result<RatInterval, MachineError> {
    // Unreduced running fraction num/den, to avoid gcds on large integers.
    let mut num = BigInt::from(0);
    let mut den = BigInt::one();
    for k in 0..=n {
        let t = BigInt::from(4 * k + 1) * BigInt::from(4 * k + 3);
        meter.charge(1 + den.bits())?;
        num = num * &t + &den * 8;
        den *= t;
    }
    let q = pi_precision(n);
    let scale = BigInt::one() << q;
    let lo_units = (&num * &scale).div_floor(&den);
    // a_n + 1/(2(n+1)) = (2(n+1)·num + den) / (2(n+1)·den)
    let m = BigInt::from(2 * (n + 1));
    let hi_units = ((&m * &num + &den) * &scale).div_ceil(&(&m * &den));
    let three = BigInt::from(3) << q;
    let four = BigInt::from(4) << q;
    let lo = Rational::new(lo_units.max(three.clone()).min(four.clone()), scale.clone());
    let hi = Rational::new(hi_units.min(four).max(three), scale);
    Ok(RatInterval::new(lo, hi).expect("lower bound below upper bound"))
}

pub fn pi_domain() -> DomainRef {
    let ambient = Ambient::new(Rational::from_integer(3.into()), Rational::from_integer(4.into())).expect("3 < 4");
    Arc::new(IntervalDomain::new(ambient))
}

/// π as an element of `interval(3,4)`: emission `n` is [`pi_enclosure`]`(n)`.
pub fn pi_element() -> ComputableElement {
    let ambient = Ambient::new(Rational::from_integer(3.into()), Rational::from_integer(4.into())).expect("3 < 4");
    let stream = Enumerator::native("pi[leibniz]", move |n, meter| {
        let n = n.to_u64().ok_or(MachineError::OutOfRange { op: "pi", arg: n.clone() })?;
        Ok(encode_interval(&pi_enclosure(n, meter)?, &ambient)?)
    });
    ComputableElement::new("pi", pi_domain(), stream, Some(LimitDescriptor::pi()))
}

/// Upper bound on the width of emission `n`.
pub fn pi_width_bound(n: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2 * (n + 1)))
        + Rational::new(BigInt::from(2), BigInt::one() << pi_precision(n))
}
