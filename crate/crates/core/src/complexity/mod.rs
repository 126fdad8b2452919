//! Measurements and complexity audits.
//!
//! A measurement `μ` maps basis elements to `[0, ∞)` so that moving up the
//! order lowers `μ`. An element is computed within `t` when some `φ` emits,
//! in at most `t(n)` steps, a basis element `b_{φ(n)} ⪯ x` with
//! `μ(b_{φ(n)}) − μ(x) < 2^{-n}`. Steps are the micro-steps of the
//! [`machine`](crate::machine) cost model.

mod audit;
mod bound;
mod fan;
mod measurement;

pub use audit::{
    cantor_identity_witness, constant_witness, element_complexity_audit, function_complexity_audit,
    polytime_check, scale3_witness, AuditReport, AuditRow, PolyFit, Precision,
};
pub use bound::{phi0_program, step_profile, t0_bound, ComplexityBound, T0_SCALE};
pub use fan::{fan_diagonal, FanDiagonal, FanOpen};
pub use measurement::{
    builtin_measurement, check_monotone, check_strict_monotone, generic_measurement, inducing_by_strictness,
    Inducing, Measurement, OrderWitness,
};
