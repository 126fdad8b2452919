//! Alternative finite maps for the same basis and sub-bases.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::{BasisValue, DomainError, DomainRef, EffectiveDomain, LimitDescriptor, UnitInterval};
use crate::codes::{decode_string, encode_string, BitString};
use crate::machine::{Enumerator, DEFAULT_FUEL};
use crate::{Nat, Rational};

/// A bijection on codes given by a forward map and its inverse.
#[derive(Clone, Debug)]
pub struct CodePermutation {
    name: String,
    forward: Enumerator,
    backward: Enumerator,
}

impl CodePermutation {
    pub fn new(name: &str, forward: Enumerator, backward: Enumerator) -> Self {
        Self { name: String::from(name), forward, backward }
    }

    pub fn identity() -> Self {
        Self::new("identity", Enumerator::identity(), Enumerator::identity())
    }

    /// `c ↦ perm[c]` for `c < perm.len()`, identity beyond. `perm` must be a
    /// permutation of `0..perm.len()`.
    pub fn window(perm: Vec<u64>) -> Result<Self, DomainError> {
        let mut inverse = alloc::vec![u64::MAX; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            let slot = inverse
                .get_mut(p as usize)
                .ok_or_else(|| DomainError::NotPermutation(format!("{p} outside 0..{}", perm.len())))?;
            if *slot != u64::MAX {
                return Err(DomainError::NotPermutation(format!("{p} repeated")));
            }
            *slot = i as u64;
        }
        let lookup = |table: Arc<Vec<u64>>| {
            move |c: &Nat, meter: &mut crate::machine::Meter| {
                meter.tick()?;
                Ok(match c.to_usize().and_then(|i| table.get(i)) {
                    Some(&v) => Nat::from(v),
                    None => c.clone(),
                })
            }
        };
        let len = perm.len();
        Ok(Self::new(
            &format!("window{len}"),
            Enumerator::native("window", lookup(Arc::new(perm))),
            Enumerator::native("window-inverse", lookup(Arc::new(inverse))),
        ))
    }

    pub fn swap(a: u64, b: u64) -> Self {
        let len = a.max(b) as usize + 1;
        let mut perm: Vec<u64> = (0..len as u64).collect();
        perm.swap(a as usize, b as usize);
        Self::window(perm).expect("a transposition is a permutation")
    }

    /// On string codes: rotates the values inside every length block by `shift`.
    pub fn cantor_block_shift(shift: u64) -> Self {
        let rotate = move |forward: bool| {
            move |c: &Nat, meter: &mut crate::machine::Meter| {
                meter.charge(1 + c.bits())?;
                let s = decode_string(c);
                let modulus = Nat::one() << s.len();
                let k = Nat::from(shift) % &modulus;
                let v = if forward { (s.value() + k) % &modulus } else { (s.value() + &modulus - k) % &modulus };
                let bits = (0..s.len()).rev().map(|i| v.bit(i as u64)).collect();
                Ok(encode_string(&BitString::from_bits(bits)))
            }
        };
        Self::new(
            &format!("block-shift{shift}"),
            Enumerator::native("block-shift", rotate(true)),
            Enumerator::native("block-shift-inverse", rotate(false)),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn forward(&self) -> &Enumerator {
        &self.forward
    }

    pub fn backward(&self) -> &Enumerator {
        &self.backward
    }

    pub fn apply(&self, c: &Nat) -> Result<Nat, DomainError> {
        Ok(self.forward.evaluate(c, DEFAULT_FUEL)?.value)
    }

    pub fn invert(&self, c: &Nat) -> Result<Nat, DomainError> {
        Ok(self.backward.evaluate(c, DEFAULT_FUEL)?.value)
    }

    /// Both compositions are the identity on codes `< sample`.
    pub fn check(&self, sample: u64) -> Result<(), DomainError> {
        for c in 0..sample {
            let c = Nat::from(c);
            let there = self.apply(&c)?;
            if self.invert(&there)? != c {
                return Err(DomainError::NotPermutation(format!("{} fails to invert at {c}", self.name)));
            }
            if self.apply(&self.invert(&c)?)? != c {
                return Err(DomainError::NotPermutation(format!("{} fails to invert at {c}", self.name)));
            }
        }
        Ok(())
    }
}

/// `inner` read through a second finite map: code `c` denotes the inner
/// basis element with code `backward(c)`.
#[derive(Clone)]
pub struct RecodedDomain {
    inner: DomainRef,
    perm: CodePermutation,
}

impl RecodedDomain {
    pub fn new(inner: DomainRef, perm: CodePermutation) -> Self {
        Self { inner, perm }
    }

    pub fn inner(&self) -> &DomainRef {
        &self.inner
    }

    pub fn permutation(&self) -> &CodePermutation {
        &self.perm
    }
}

impl EffectiveDomain for RecodedDomain {
    fn name(&self) -> String {
        format!("{}/{}", self.inner.name(), self.perm.name())
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        self.inner.decode(&self.perm.invert(code)?)
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        self.perm.apply(&self.inner.encode(value)?)
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        self.inner.parse_value(text)
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        self.inner.leq_values(a, b)
    }

    fn has_way_below(&self) -> bool {
        self.inner.has_way_below()
    }

    fn way_below_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        self.inner.way_below_values(a, b)
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        self.inner.leq_to_limit(a, x)
    }

    fn way_below_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        self.inner.way_below_limit(a, x)
    }

    fn witness_family(
        &self,
        a: &BasisValue,
        x: &LimitDescriptor,
        count: usize,
    ) -> Result<(String, Vec<BasisValue>), DomainError> {
        self.inner.witness_family(a, x, count)
    }
}

/// Triadic rationals `k/3^j` in `[0, 1)`: a sub-basis of [`UnitInterval`]
/// with the same order and way-below relation.
///
/// Code 0 is 0; the block for `j ≥ 1` occupies codes `3^{j−1} .. 3^j` and
/// rank `r` inside it is `k = r + ⌊r/2⌋ + 1`, skipping multiples of 3.
#[derive(Clone, Copy, Debug, Default)]
pub struct TriadicUnit;

impl TriadicUnit {
    pub fn value(code: &Nat) -> Rational {
        if code.is_zero() {
            return Rational::zero();
        }
        let three = Nat::from(3u32);
        let mut start = Nat::one();
        let mut den = three.clone();
        while &(&start * &three) <= code {
            start *= &three;
            den *= &three;
        }
        let r: Nat = code - &start;
        let k = &r + (&r >> 1usize) + 1u32;
        Rational::new(BigInt::from(k), BigInt::from(den))
    }

    pub fn code(q: &Rational) -> Option<Nat> {
        if q.is_zero() {
            return Some(Nat::zero());
        }
        if q < &Rational::zero() || q >= &Rational::one() {
            return None;
        }
        let k = q.numer().to_biguint()?;
        let mut den = q.denom().to_biguint()?;
        let three = Nat::from(3u32);
        let mut start = Nat::one();
        while den > three {
            let (d, rem) = den.div_rem(&three);
            if !rem.is_zero() {
                return None;
            }
            den = d;
            start *= &three;
        }
        if den != three {
            return None;
        }
        let (t, rem) = k.div_rem(&three);
        let r = match rem.to_u32()? {
            1 => &t << 1usize,
            2 => (&t << 1usize) + 1u32,
            _ => return None,
        };
        Some(start + r)
    }
}

impl EffectiveDomain for TriadicUnit {
    fn name(&self) -> String {
        String::from("triadicUnit")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Rat(Self::value(code)))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        match value {
            BasisValue::Rat(q) => Self::code(q).ok_or_else(|| self.wrong(value)),
            v => Err(self.wrong(v)),
        }
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        UnitInterval.parse_value(text)
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        UnitInterval.leq_values(a, b)
    }

    fn has_way_below(&self) -> bool {
        true
    }

    fn way_below_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        UnitInterval.way_below_values(a, b)
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        UnitInterval.leq_to_limit(a, x)
    }

    fn way_below_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        UnitInterval.way_below_limit(a, x)
    }
}
