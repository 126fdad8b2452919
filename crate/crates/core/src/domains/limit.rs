use alloc::format;
use alloc::string::String;
use core::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::codes::BitString;
use crate::reals::RealPoint;
use crate::{Nat, Rational};

/// An eventually periodic infinite binary word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteWord {
    prefix: BitString,
    period: BitString,
}

impl InfiniteWord {
    /// `None` when `period` is empty.
    pub fn new(prefix: BitString, period: BitString) -> Option<Self> {
        (!period.is_empty()).then_some(Self { prefix, period })
    }

    pub fn bit(&self, i: usize) -> bool {
        let p = self.prefix.bits();
        if i < p.len() {
            p[i]
        } else {
            let q = self.period.bits();
            q[(i - p.len()) % q.len()]
        }
    }

    pub fn has_prefix(&self, s: &BitString) -> bool {
        s.bits().iter().enumerate().all(|(i, &b)| self.bit(i) == b)
    }

    pub fn truncated(&self, len: usize) -> BitString {
        BitString::from_bits((0..len).map(|i| self.bit(i)).collect())
    }
}

impl fmt::Display for InfiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^w", self.prefix, self.period)
    }
}

/// Decidable infinite sets of naturals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NatSet {
    /// `{n : n ≡ residue (mod modulus)}`, `residue < modulus`.
    Residue { modulus: Nat, residue: Nat },
    /// `{n : n ≥ start}`.
    AtLeast(Nat),
}

impl NatSet {
    pub fn evens() -> Self {
        NatSet::Residue { modulus: Nat::from(2u32), residue: Nat::zero() }
    }

    pub fn contains(&self, n: &Nat) -> bool {
        match self {
            NatSet::Residue { modulus, residue } => &(n % modulus) == residue,
            NatSet::AtLeast(s) => n >= s,
        }
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &NatSet) -> bool {
        use NatSet::*;
        match (self, other) {
            (Residue { modulus: m1, residue: r1 }, Residue { modulus: m2, residue: r2 }) => {
                m1.is_multiple_of(m2) && &(r1 % m2) == r2
            }
            (Residue { residue, .. }, AtLeast(s)) => residue >= s,
            (AtLeast(a), AtLeast(b)) => a >= b,
            (AtLeast(_), Residue { modulus, .. }) => modulus.is_one(),
        }
    }
}

impl fmt::Display for NatSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NatSet::Residue { modulus, residue } => write!(f, "{{n : n = {residue} mod {modulus}}}"),
            NatSet::AtLeast(s) => write!(f, "{{n : n >= {s}}}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Real(RealPoint),
    Word(InfiniteWord),
    Set(NatSet),
    /// The top element (`∞` in the Q-domain, `p` in the fan).
    Top,
}

/// A named non-basis element together with its symbolic identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitDescriptor {
    pub name: String,
    pub limit: Limit,
}

impl LimitDescriptor {
    pub fn new(name: impl Into<String>, limit: Limit) -> Self {
        Self { name: name.into(), limit }
    }

    pub fn real(point: RealPoint) -> Self {
        Self::new(format!("{point}"), Limit::Real(point))
    }

    pub fn rational(q: Rational) -> Self {
        Self::new(format!("{q}"), Limit::Real(RealPoint::Rational(q)))
    }

    pub fn sqrt2() -> Self {
        Self::new("sqrt2", Limit::Real(RealPoint::sqrt2()))
    }

    pub fn pi() -> Self {
        Self::new("pi", Limit::Real(RealPoint::Pi))
    }

    pub fn word(w: InfiniteWord) -> Self {
        Self::new(format!("{w}"), Limit::Word(w))
    }

    pub fn zeros() -> Self {
        let w = InfiniteWord::new(BitString::empty(), BitString::from_bits(alloc::vec![false]));
        Self::new("0^w", Limit::Word(w.expect("period is non-empty")))
    }

    pub fn set(s: NatSet) -> Self {
        Self::new(format!("{s}"), Limit::Set(s))
    }

    pub fn evens() -> Self {
        Self::new("evens", Limit::Set(NatSet::evens()))
    }

    pub fn top(name: impl Into<String>) -> Self {
        Self::new(name, Limit::Top)
    }

    pub fn point(&self) -> Option<&RealPoint> {
        match &self.limit {
            Limit::Real(p) => Some(p),
            _ => None,
        }
    }
}

impl fmt::Display for LimitDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn periodic_words() {
        let w = InfiniteWord::new("1".parse().unwrap(), "01".parse().unwrap()).unwrap();
        assert_eq!(w.truncated(6).to_string(), "101010");
        assert!(w.has_prefix(&"1010".parse().unwrap()));
        assert!(!w.has_prefix(&"11".parse().unwrap()));
        assert!(InfiniteWord::new(BitString::empty(), BitString::empty()).is_none());
    }

    #[test]
    fn set_inclusion() {
        let four = NatSet::Residue { modulus: Nat::from(4u32), residue: Nat::from(2u32) };
        assert!(four.is_subset_of(&NatSet::evens()));
        assert!(!NatSet::evens().is_subset_of(&four));
        assert!(NatSet::AtLeast(Nat::from(5u32)).is_subset_of(&NatSet::AtLeast(Nat::from(3u32))));
        assert!(four.contains(&Nat::from(10u32)));
    }
}
