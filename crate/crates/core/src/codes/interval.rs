use core::fmt;

use num_traits::{One, Zero};

use super::fraction::{decode_unit_closed, encode_unit_closed};
use super::pairing::{pair, unpair};
use super::CodeError;
use crate::{Nat, Rational};

/// Closed rational interval `[lo, hi]` with `lo ≤ hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatInterval {
    lo: Rational,
    hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self, CodeError> {
        if lo > hi {
            return Err(CodeError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RatInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    /// Image under `x ↦ factor · x + offset` for a positive factor.
    pub fn affine(&self, factor: &Rational, offset: &Rational) -> RatInterval {
        RatInterval {
            lo: &self.lo * factor + offset,
            hi: &self.hi * factor + offset,
        }
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Ambient interval `[A, B]`, `A < B`, whose rational subintervals are coded.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient(RatInterval);

impl Ambient {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CodeError> {
        if a >= b {
            return Err(CodeError::DegenerateAmbient { a, b });
        }
        Ok(Self(RatInterval { lo: a, hi: b }))
    }

    pub fn unit() -> Self {
        Self(RatInterval { lo: Rational::zero(), hi: Rational::one() })
    }

    pub fn interval(&self) -> &RatInterval {
        &self.0
    }

    pub fn a(&self) -> &Rational {
        &self.0.lo
    }

    pub fn b(&self) -> &Rational {
        &self.0.hi
    }

    fn normalize(&self, x: &Rational) -> Rational {
        (x - self.a()) / self.0.width()
    }

    fn denormalize(&self, t: &Rational) -> Rational {
        t * self.0.width() + self.a()
    }
}

/// Index → rational subinterval of the ambient `[A, B]`.
///
/// Endpoints are mapped affinely onto `[0, 1]` and coded with
/// [`decode_unit_closed`]. The unordered pair of endpoint indices
/// `{i, j}`, `i ≤ j`, is coded as `⟨i, j − i⟩`; afterwards codes 0 and 1 are
/// swapped so that index 0 is the ambient interval itself (endpoint indices
/// `{0, 1}`) and index 1 is the degenerate interval `[A, A]`.
pub fn decode_interval(index: &Nat, ambient: &Ambient) -> Result<RatInterval, CodeError> {
    let raw = swap_bottom(index);
    let (i, gap) = unpair(&raw);
    let j = &i + gap;
    let s = decode_unit_closed(&i)?;
    let t = decode_unit_closed(&j)?;
    let (lo, hi) = if s <= t { (s, t) } else { (t, s) };
    Ok(RatInterval { lo: ambient.denormalize(&lo), hi: ambient.denormalize(&hi) })
}

/// Inverse of [`decode_interval`].
pub fn encode_interval(iv: &RatInterval, ambient: &Ambient) -> Result<Nat, CodeError> {
    if !iv.is_subset_of(ambient.interval()) {
        return Err(CodeError::OutsideAmbient {
            interval: iv.clone(),
            ambient: ambient.interval().clone(),
        });
    }
    let i = encode_unit_closed(&ambient.normalize(&iv.lo))?;
    let j = encode_unit_closed(&ambient.normalize(&iv.hi))?;
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    let gap = &j - &i;
    Ok(swap_bottom(&pair(&i, &gap)))
}

fn swap_bottom(code: &Nat) -> Nat {
    if code.is_zero() {
        Nat::one()
    } else if code.is_one() {
        Nat::zero()
    } else {
        code.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn amb(a: i64, b: i64) -> Ambient {
        Ambient::new(q(a, 1), q(b, 1)).unwrap()
    }

    #[test]
    fn index_zero_is_the_ambient() {
        let a = amb(1, 2);
        let iv = decode_interval(&Nat::zero(), &a).unwrap();
        assert_eq!(iv, RatInterval::new(q(1, 1), q(2, 1)).unwrap());
        assert_eq!(decode_interval(&Nat::one(), &a).unwrap(), RatInterval::point(q(1, 1)));
    }

    #[test]
    fn roundtrip_and_injectivity() {
        let a = amb(-3, 5);
        let mut seen = BTreeSet::new();
        for k in 0u32..10_000 {
            let iv = decode_interval(&Nat::from(k), &a).unwrap();
            assert!(iv.is_subset_of(a.interval()));
            assert_eq!(encode_interval(&iv, &a).unwrap(), Nat::from(k));
            if k <= 50 {
                assert!(seen.insert(iv.to_string()));
            }
        }
        assert_eq!(seen.len(), 51);
    }

    #[test]
    fn rejects_outside_ambient() {
        let a = amb(0, 1);
        let iv = RatInterval::new(q(1, 2), q(3, 2)).unwrap();
        assert!(matches!(encode_interval(&iv, &a), Err(CodeError::OutsideAmbient { .. })));
        assert!(RatInterval::new(q(1, 1), q(0, 1)).is_err());
        assert!(Ambient::new(q(1, 1), q(1, 1)).is_err());
    }

    #[test]
    fn known_codes() {
        // [1, 3/2] in [1, 2] normalizes to [0, 1/2]: endpoint indices {0, 2}.
        let a = amb(1, 2);
        let iv = RatInterval::new(q(1, 1), q(3, 2)).unwrap();
        assert_eq!(encode_interval(&iv, &a).unwrap(), Nat::from(3u32));
    }
}
