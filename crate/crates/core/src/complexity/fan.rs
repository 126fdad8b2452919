//! Diagonal replay on the truncated fan `(I_n)_{n<k} ∪ {p}`.
//!
//! A nonempty Scott open of the fan is `⋃_n [b_n, p]` for one threshold
//! `b_n ∈ I_n` per branch, so a candidate family of opens is a list of
//! threshold vectors. The diagonal open `O′` takes `b′_n = b^n_n + 1`; each
//! candidate `O_m` then contains `b^m_m ∉ O′`, so no candidate lies inside
//! `O′` and the family is not a basis.

use alloc::vec::Vec;

use crate::domains::BasisValue;
use crate::Nat;

/// One candidate open, `O = ⋃_n [(n, thresholds[n]), p]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanOpen {
    pub thresholds: Vec<u64>,
}

impl FanOpen {
    pub fn contains(&self, branch: usize, k: u64) -> bool {
        self.thresholds.get(branch).is_some_and(|&t| k >= t)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanDiagonal {
    pub diagonal: FanOpen,
    /// For candidate `m`: the element `b^m_m`, which lies in `O_m` but not `O′`.
    pub witnesses: Vec<BasisValue>,
}

impl FanDiagonal {
    /// Re-checks every witness against the candidates and the diagonal.
    pub fn verify(&self, candidates: &[FanOpen]) -> bool {
        candidates.len() == self.witnesses.len()
            && candidates.iter().zip(&self.witnesses).all(|(c, w)| match w {
                BasisValue::Fan { branch, k } => {
                    let (b, k) = (usize::try_from(branch).unwrap_or(usize::MAX), u64::try_from(k).unwrap_or(u64::MAX));
                    c.contains(b, k) && !self.diagonal.contains(b, k)
                }
                _ => false,
            })
    }
}

/// Builds `O′` for `k` candidates over the first `k` branches. Each
/// candidate must assign a threshold to at least those branches.
pub fn fan_diagonal(candidates: &[FanOpen]) -> Option<FanDiagonal> {
    let k = candidates.len();
    if candidates.iter().any(|c| c.thresholds.len() < k) {
        return None;
    }
    let thresholds = (0..k).map(|n| candidates[n].thresholds[n] + 1).collect();
    let witnesses = (0..k)
        .map(|m| BasisValue::Fan { branch: Nat::from(m), k: Nat::from(candidates[m].thresholds[m]) })
        .collect();
    Some(FanDiagonal { diagonal: FanOpen { thresholds }, witnesses })
}
