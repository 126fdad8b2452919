//! Costed total programs `ℕ → ℕ`.
//!
//! An [`Enumerator`] is a deterministic program whose range is the
//! recursively enumerable set it stands for. Evaluation is metered: every
//! node visit of an [`Expr`] costs one micro-step, native enumerators charge
//! their own steps explicitly, and a fuel ceiling turns runaway programs into
//! [`MachineError::FuelExhausted`].

mod dovetail;
mod expr;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::codes::CodeError;
use crate::Nat;

pub use dovetail::{
    dovetail_merge2, dovetail_merge2_with, dovetail_merge3, fairness_audit, membership_scan, recode, shell_cell,
    CantorSchedule, Fairness, Scan, Schedule, ShellSchedule,
};
pub use expr::{BinOp, Expr, UnOp};

/// Fuel ceiling used when the caller does not pick one.
pub const DEFAULT_FUEL: u64 = 1 << 34;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MachineError {
    #[error("fuel exhausted after {limit} steps")]
    FuelExhausted { limit: u64 },
    #[error("unbound variable ${0}")]
    UnboundVariable(usize),
    #[error("{op}: argument {arg} out of range")]
    OutOfRange { op: &'static str, arg: Nat },
    #[error("empty table")]
    EmptyTable,
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Step counter with a hard ceiling.
#[derive(Clone, Debug)]
pub struct Meter {
    used: u64,
    limit: u64,
}

impl Meter {
    pub fn new(limit: u64) -> Self {
        Self { used: 0, limit }
    }

    pub fn tick(&mut self) -> Result<(), MachineError> {
        self.charge(1)
    }

    pub fn charge(&mut self, steps: u64) -> Result<(), MachineError> {
        self.used = self.used.saturating_add(steps);
        if self.used > self.limit {
            return Err(MachineError::FuelExhausted { limit: self.limit });
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// A total program `ℕ → ℕ` evaluated against a [`Meter`].
pub trait Enumerate: Send + Sync {
    fn eval(&self, n: &Nat, meter: &mut Meter) -> Result<Nat, MachineError>;

    fn describe(&self) -> String {
        String::from("native")
    }
}

/// Result of one metered evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: Nat,
    pub steps: u64,
}

/// Shared handle to an enumerator.
#[derive(Clone)]
pub struct Enumerator(Arc<dyn Enumerate>);

impl Enumerator {
    pub fn new<E: Enumerate + 'static>(e: E) -> Self {
        Self(Arc::new(e))
    }

    pub fn program(expr: Expr) -> Self {
        Self::new(expr)
    }

    /// Native enumerator; `f` must charge its own steps (at least one).
    pub fn native<F>(name: &str, f: F) -> Self
    where
        F: Fn(&Nat, &mut Meter) -> Result<Nat, MachineError> + Send + Sync + 'static,
    {
        Self::new(Native { name: String::from(name), f })
    }

    pub fn identity() -> Self {
        Self::program(Expr::Input)
    }

    pub fn constant(c: impl Into<Nat>) -> Self {
        Self::program(Expr::Const(c.into()))
    }

    /// `n ↦ values[n mod len]`; the range is exactly the set of table entries.
    pub fn table<I, T>(values: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Nat>,
    {
        let values = values.into_iter().map(Into::into).collect();
        Self::program(Expr::Table(values, expr::boxed(Expr::Input)))
    }

    pub fn eval_metered(&self, n: &Nat, meter: &mut Meter) -> Result<Nat, MachineError> {
        self.0.eval(n, meter)
    }

    /// Value and step count at `n` with the given fuel ceiling.
    pub fn evaluate(&self, n: &Nat, fuel: u64) -> Result<Evaluation, MachineError> {
        let mut meter = Meter::new(fuel);
        let value = self.0.eval(n, &mut meter)?;
        Ok(Evaluation { value, steps: meter.used().max(1) })
    }

    pub fn evaluate_u64(&self, n: u64, fuel: u64) -> Result<Evaluation, MachineError> {
        self.evaluate(&Nat::from(n), fuel)
    }

    /// Values at `0..count`, each with its own fuel ceiling.
    pub fn take(&self, count: u64, fuel: u64) -> Result<Vec<Nat>, MachineError> {
        (0..count).map(|n| self.evaluate_u64(n, fuel).map(|e| e.value)).collect()
    }

    pub fn describe(&self) -> String {
        self.0.describe()
    }
}

impl fmt::Debug for Enumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Enumerator({})", self.describe())
    }
}

struct Native<F> {
    name: String,
    f: F,
}

impl<F> Enumerate for Native<F>
where
    F: Fn(&Nat, &mut Meter) -> Result<Nat, MachineError> + Send + Sync,
{
    fn eval(&self, n: &Nat, meter: &mut Meter) -> Result<Nat, MachineError> {
        (self.f)(n, meter)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}
