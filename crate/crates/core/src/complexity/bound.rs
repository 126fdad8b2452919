use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use crate::machine::{Enumerator, Expr, MachineError};
use crate::Nat;

/// A step budget `t : ℕ → ℕ`, as a closed-form program in `n` or a table.
#[derive(Clone, Debug)]
pub enum ComplexityBound {
    Closed(Expr),
    Table(Vec<u64>),
}

impl ComplexityBound {
    /// Parses a closed form written in the expression language, e.g.
    /// `(* 12 (- (pow 2 (+ n 1)) 2))`.
    pub fn closed(src: &str) -> Result<Self, String> {
        src.parse::<Expr>().map(ComplexityBound::Closed).map_err(|e| format!("{e}"))
    }

    /// `t(n)`, or `None` where a table ends or the value overflows `u64`.
    pub fn at(&self, n: u64) -> Option<u64> {
        match self {
            ComplexityBound::Closed(e) => Enumerator::program(e.clone())
                .evaluate_u64(n, crate::machine::DEFAULT_FUEL)
                .ok()
                .and_then(|ev| ev.value.to_u64()),
            ComplexityBound::Table(t) => t.get(n as usize).copied(),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ComplexityBound::Closed(e) => format!("{e}"),
            ComplexityBound::Table(t) => format!("table[{}]", t.len()),
        }
    }
}

/// The corrected program for `x = 1` on `unitInterval`: it emits the index
/// of `(2^{n+1} − 1)/2^{n+1}`, which is `Φ(2^{n+1}) − 1 = Σ_{i=2}^{2^{n+1}} φ(i)`
/// in the reduced-fraction enumeration.
pub fn phi0_program() -> Expr {
    "(fold (- (pow 2 (+ n 1)) 1) 0 (+ $1 (totient (+ $0 2))))"
        .parse()
        .expect("valid program")
}

/// Scale factor of [`t0_bound`]: one fold iteration of [`phi0_program`]
/// costs 6 micro-steps and the setup 9, so `6 (2^{n+1} − 1) + 9 ≤ 15 t₀(n)`,
/// tight at `n = 0`.
pub const T0_SCALE: u64 = 15;

/// `t₀(0) = 1`, `t₀(n) = 2^{n+1} − 2`, scaled by [`T0_SCALE`] for the
/// expression-language cost model.
pub fn t0_bound() -> ComplexityBound {
    let src = format!("(* {T0_SCALE} (if (= n 0) 1 (- (pow 2 (+ n 1)) 2)))");
    ComplexityBound::closed(&src).expect("valid program")
}

/// Evaluates `phi` on `0..count` and records steps.
pub fn step_profile(phi: &Enumerator, count: u64, fuel: u64) -> Result<Vec<(Nat, u64)>, MachineError> {
    (0..count).map(|n| phi.evaluate_u64(n, fuel).map(|e| (e.value, e.steps))).collect()
}
