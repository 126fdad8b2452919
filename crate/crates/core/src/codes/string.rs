use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::One;

use super::CodeError;
use crate::Nat;

/// A finite word over `{0, 1}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString {
    bits: Vec<bool>,
}

impl BitString {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_prefix_of(&self, other: &BitString) -> bool {
        other.bits.starts_with(&self.bits)
    }

    pub fn truncated(&self, len: usize) -> BitString {
        Self::from_bits(self.bits[..len.min(self.bits.len())].to_vec())
    }

    /// The word read as a binary numeral, most significant bit first.
    pub fn value(&self) -> Nat {
        self.bits.iter().fold(Nat::default(), |acc, &b| {
            let acc = acc << 1usize;
            if b { acc + 1u32 } else { acc }
        })
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = CodeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_matches('"');
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(CodeError::NotBinary(String::from(s))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { bits })
    }
}

/// Index → binary word, ordered by length and then by numeric value.
///
/// The empty word sits at index 0 and the block of words of length `m`
/// occupies indices `2^m − 1 ..= 2^{m+1} − 2`, so index `i` decodes to the
/// `m`-digit numeral of `i + 1 − 2^m` with `m = ⌊log₂(i + 1)⌋`.
pub fn decode_string(index: &Nat) -> BitString {
    let shifted = index + 1u32;
    let len = (shifted.bits() - 1) as usize;
    let value = shifted - (Nat::one() << len);
    let bits = (0..len).rev().map(|i| value.bit(i as u64)).collect();
    BitString { bits }
}

/// Inverse of [`decode_string`]: `2^{|s|} − 1 + value(s)`.
pub fn encode_string(s: &BitString) -> Nat {
    (Nat::one() << s.len()) - 1u32 + s.value()
}
