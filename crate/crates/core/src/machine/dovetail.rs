//! Dovetailing combinators over enumerators.

use alloc::format;
use alloc::sync::Arc;

use num_traits::{ToPrimitive, Zero};

use super::{Enumerator, MachineError, Meter};
use crate::codes::{pair, unpair, untriple};
use crate::Nat;

/// A fair walk over `ℕ × ℕ`: `cell(n) = (p, q)` means that step `n`
/// compares `h(p)` against `g(q)`. Every cell must be visited.
pub trait Schedule: Send + Sync {
    fn cell(&self, n: &Nat) -> (Nat, Nat);

    fn name(&self) -> &'static str;
}

/// Square shells: shell `t` covers steps `t² ..= (t+1)² − 1` and visits the
/// `2t + 1` cells with `max(p, q) = t`. Steps `t² + j` for `j ≤ t` visit
/// `(t, t − j)`; steps `t² + t + 1 + j` for `j < t` visit `(j, t)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ShellSchedule;

/// Cantor diagonals: `cell(n) = (π₁(n), π₂(n))`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CantorSchedule;

/// The cell visited at step `n` by [`ShellSchedule`].
pub fn shell_cell(n: &Nat) -> (Nat, Nat) {
    let t = n.sqrt();
    let j = n - &t * &t;
    if j <= t {
        let q = &t - &j;
        (t, q)
    } else {
        (j - &t - 1u32, t)
    }
}

impl Schedule for ShellSchedule {
    fn cell(&self, n: &Nat) -> (Nat, Nat) {
        shell_cell(n)
    }

    fn name(&self) -> &'static str {
        "shell"
    }
}

impl Schedule for CantorSchedule {
    fn cell(&self, n: &Nat) -> (Nat, Nat) {
        unpair(n)
    }

    fn name(&self) -> &'static str {
        "cantor"
    }
}

/// `dovetail_merge2_with(g, h, ShellSchedule)`.
pub fn dovetail_merge2(g: &Enumerator, h: &Enumerator) -> Enumerator {
    dovetail_merge2_with(g, h, ShellSchedule)
}

/// Enumerates `{π₁(h(k)) : π₂(h(k)) ∈ g(ℕ)} ∪ {0}`.
///
/// Output 0 is emitted at `n = 0` and whenever a comparison fails; step
/// `n + 1` performs the comparison at `schedule.cell(n)`.
pub fn dovetail_merge2_with<S: Schedule + 'static>(
    g: &Enumerator,
    h: &Enumerator,
    schedule: S,
) -> Enumerator {
    let (g, h) = (g.clone(), h.clone());
    let name = format!("merge2[{}]({}, {})", schedule.name(), g.describe(), h.describe());
    let schedule = Arc::new(schedule);
    Enumerator::native(&name, move |n, meter| {
        meter.tick()?;
        if n.is_zero() {
            return Ok(Nat::zero());
        }
        let (p, q) = schedule.cell(&(n - 1u32));
        let (first, second) = unpair(&h.eval_metered(&p, meter)?);
        let gv = g.eval_metered(&q, meter)?;
        Ok(if second == gv { first } else { Nat::zero() })
    })
}

/// Enumerates `{⟨π₁ g(r), π₂ j(t)⟩ : π₂ g(r) = π₁ h(s), π₂ h(s) = π₁ j(t)} ∪ {0}`,
/// visiting the triple `(r, s, t) = untriple(n)` at step `n + 1`.
pub fn dovetail_merge3(g: &Enumerator, h: &Enumerator, j: &Enumerator) -> Enumerator {
    let (g, h, j) = (g.clone(), h.clone(), j.clone());
    let name = format!("merge3({}, {}, {})", g.describe(), h.describe(), j.describe());
    Enumerator::native(&name, move |n, meter| {
        meter.tick()?;
        if n.is_zero() {
            return Ok(Nat::zero());
        }
        let (r, s, t) = untriple(&(n - 1u32));
        let (g1, g2) = unpair(&g.eval_metered(&r, meter)?);
        let (h1, h2) = unpair(&h.eval_metered(&s, meter)?);
        let (j1, j2) = unpair(&j.eval_metered(&t, meter)?);
        Ok(if g2 == h1 && h2 == j1 { pair(&g1, &j2) } else { Nat::zero() })
    })
}

/// `n ↦ translation(e(n))`.
pub fn recode(e: &Enumerator, translation: &Enumerator) -> Enumerator {
    let (e, tr) = (e.clone(), translation.clone());
    let name = format!("recode({}, {})", e.describe(), tr.describe());
    Enumerator::native(&name, move |n, meter: &mut Meter| {
        meter.tick()?;
        let v = e.eval_metered(n, meter)?;
        tr.eval_metered(&v, meter)
    })
}

/// Outcome of [`membership_scan`]. `NotFound` is inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scan {
    Found { at: u64 },
    NotFound { scanned: u64 },
}

/// Looks for `v` among `e(0), …, e(budget − 1)`.
pub fn membership_scan(
    e: &Enumerator,
    v: &Nat,
    budget: u64,
    fuel: u64,
) -> Result<Scan, MachineError> {
    for k in 0..budget {
        if &e.evaluate_u64(k, fuel)?.value == v {
            return Ok(Scan::Found { at: k });
        }
    }
    Ok(Scan::NotFound { scanned: budget })
}

/// Result of [`fairness_audit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fairness {
    /// Every cell of the window was visited exactly once within `steps`.
    Fair { steps: u64 },
    Repeated { cell: (u64, u64), step: u64 },
    Missing { cell: (u64, u64) },
}

/// Checks that `schedule` visits each cell of `window × window` exactly once
/// among its first `budget` steps.
pub fn fairness_audit<S: Schedule + ?Sized>(schedule: &S, window: u64, budget: u64) -> Fairness {
    let w = window as usize;
    let mut seen = alloc::vec![false; w * w];
    let mut last = 0;
    for n in 0..budget {
        let (p, q) = schedule.cell(&Nat::from(n));
        let (Some(p), Some(q)) = (p.to_u64(), q.to_u64()) else { continue };
        if p >= window || q >= window {
            continue;
        }
        let slot = &mut seen[p as usize * w + q as usize];
        if *slot {
            return Fairness::Repeated { cell: (p, q), step: n };
        }
        *slot = true;
        last = n + 1;
    }
    match seen.iter().position(|&v| !v) {
        Some(i) => Fairness::Missing { cell: ((i / w) as u64, (i % w) as u64) },
        None => Fairness::Fair { steps: last },
    }
}
