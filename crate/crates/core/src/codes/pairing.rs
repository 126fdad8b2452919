use num_traits::One;

use crate::Nat;

/// Cantor pairing `⟨n, m⟩ = ((n + m)² + 3n + m) / 2`.
///
/// The anti-diagonal `w = n + m` is walked with `m = 0` last, so
/// `⟨1, 0⟩ = 2` and `⟨0, 1⟩ = 1`.
pub fn pair(n: &Nat, m: &Nat) -> Nat {
    let w = n + m;
    let tri = (&w * (&w + 1u32)) >> 1usize;
    tri + n
}

/// Inverse of [`pair`]: returns `(π₁(k), π₂(k))`.
pub fn unpair(k: &Nat) -> (Nat, Nat) {
    // w = ⌊(√(8k + 1) − 1) / 2⌋ is the anti-diagonal holding k.
    let disc: Nat = (k << 3usize) + Nat::one();
    let w: Nat = (disc.sqrt() - 1u32) >> 1usize;
    let tri = (&w * (&w + 1u32)) >> 1usize;
    let n = k - tri;
    let m = &w - &n;
    (n, m)
}

/// First projection `π₁`.
pub fn fst(k: &Nat) -> Nat {
    unpair(k).0
}

/// Second projection `π₂`.
pub fn snd(k: &Nat) -> Nat {
    unpair(k).1
}

/// `pair` on machine integers; panics only if the result overflows `u128`.
pub fn pair_u64(n: u64, m: u64) -> u128 {
    let w = n as u128 + m as u128;
    w * (w + 1) / 2 + n as u128
}

/// Cantor triple `⟨r, ⟨s, t⟩⟩`.
pub fn triple(r: &Nat, s: &Nat, t: &Nat) -> Nat {
    pair(r, &pair(s, t))
}

/// Inverse of [`triple`].
pub fn untriple(k: &Nat) -> (Nat, Nat, Nat) {
    let (r, rest) = unpair(k);
    let (s, t) = unpair(&rest);
    (r, s, t)
}
