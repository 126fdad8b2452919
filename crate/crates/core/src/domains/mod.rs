//! Effectively given domains.
//!
//! An [`EffectiveDomain`] fixes a finite map from codes to basis values and
//! decides the order (and, for bases, the way-below relation) on them. The
//! code 0 is the bottom element wherever the domain has one. Non-basis
//! points are described symbolically by a [`LimitDescriptor`].

mod builtin;
mod checks;
mod limit;
mod poset;
mod recoded;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::codes::{BitString, CodeError, RatInterval};
use crate::machine::{Enumerator, Expr, MachineError};
use crate::{Nat, Rational};

pub use builtin::{builtin, Cantor, Fan, FlippedUnit, IntervalDomain, QDomain, Turing, UnitInterval};
pub use checks::{
    check_conditionally_connected, check_effective_basis, check_order_axioms, not_way_below_witness,
    AxiomViolation, BasisReport, Witness, WitnessCheck,
};
pub use limit::{InfiniteWord, Limit, LimitDescriptor, NatSet};
pub use poset::{
    conditionally_connected, is_compact, scott_opens, upper_sets, way_below_matrix, way_below_oracle,
    FinitePoset, ORACLE_CAP, SCOTT_CAP,
};
pub use recoded::{CodePermutation, RecodedDomain, TriadicUnit};

/// Shared handle to a domain descriptor.
pub type DomainRef = Arc<dyn EffectiveDomain>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("unknown domain {0:?}")]
    UnknownDomain(String),
    #[error("{0} has only a weak basis: no way-below relation")]
    NoWayBelow(String),
    #[error("{value} is not a basis value of {domain}")]
    WrongCarrier { domain: String, value: String },
    #[error("{domain} cannot compare with the limit {limit}")]
    UnsupportedLimit { domain: String, limit: String },
    #[error("carrier of size {size} exceeds the cap of {cap}")]
    CarrierTooLarge { size: usize, cap: usize },
    #[error("covers form a cycle through {a} and {b}")]
    Cycle { a: usize, b: usize },
    #[error("element {index} outside a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("no known witness in {domain} for {detail}")]
    NoWitness { domain: String, detail: String },
    #[error("translation is not a permutation: {0}")]
    NotPermutation(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// A decoded basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BasisValue {
    Str(BitString),
    Rat(Rational),
    Interval(RatInterval),
    Nat(Nat),
    /// The element `k` of the branch `I_branch` of the fan.
    Fan { branch: Nat, k: Nat },
}

impl fmt::Display for BasisValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisValue::Str(s) => write!(f, "\"{s}\""),
            BasisValue::Rat(q) => write!(f, "{q}"),
            BasisValue::Interval(iv) => write!(f, "{iv}"),
            BasisValue::Nat(n) => write!(f, "{n}"),
            BasisValue::Fan { branch, k } => write!(f, "{branch}:{k}"),
        }
    }
}

/// Descriptor of a domain with an enumerated basis.
pub trait EffectiveDomain: Send + Sync {
    fn name(&self) -> String;

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError>;

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError>;

    /// Reads a basis value from its textual form.
    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError>;

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError>;

    fn has_way_below(&self) -> bool {
        false
    }

    fn way_below_values(&self, _a: &BasisValue, _b: &BasisValue) -> Result<bool, DomainError> {
        Err(DomainError::NoWayBelow(self.name()))
    }

    fn leq_to_limit(&self, _a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        Err(self.unsupported(x))
    }

    fn way_below_limit(&self, _a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        Err(self.unsupported(x))
    }

    /// A directed family of basis values with supremum above `x` and no
    /// member above `a`, if the domain knows one: a description and the first
    /// `count` members.
    fn witness_family(
        &self,
        a: &BasisValue,
        x: &LimitDescriptor,
        _count: usize,
    ) -> Result<(String, alloc::vec::Vec<BasisValue>), DomainError> {
        Err(DomainError::NoWitness { domain: self.name(), detail: format!("{a} against {x}") })
    }

    /// An expression-language program for the way-below graph, when one is
    /// available; otherwise [`way_below_graph`] falls back to a native one.
    fn way_below_program(&self) -> Option<Expr> {
        None
    }

    fn leq(&self, a: &Nat, b: &Nat) -> Result<bool, DomainError> {
        self.leq_values(&self.decode(a)?, &self.decode(b)?)
    }

    fn way_below(&self, a: &Nat, b: &Nat) -> Result<bool, DomainError> {
        self.way_below_values(&self.decode(a)?, &self.decode(b)?)
    }

    fn unsupported(&self, x: &LimitDescriptor) -> DomainError {
        DomainError::UnsupportedLimit { domain: self.name(), limit: format!("{x}") }
    }

    fn wrong(&self, v: &BasisValue) -> DomainError {
        DomainError::WrongCarrier { domain: self.name(), value: format!("{v}") }
    }
}

/// Enumerator of `{⟨n, m⟩ : b_n ≪ b_m}`: at a pair code `k` it emits `k`
/// when the relation holds and `⟨0, 0⟩ = 0` otherwise.
pub fn way_below_graph(d: &DomainRef) -> Result<Enumerator, DomainError> {
    if !d.has_way_below() {
        return Err(DomainError::NoWayBelow(d.name()));
    }
    if let Some(p) = d.way_below_program() {
        return Ok(Enumerator::program(p));
    }
    Ok(relation_enumerator(d.clone(), format!("wb[{}]", d.name()), true))
}

/// Enumerator of `{⟨n, m⟩ : b_n ⪯ b_m}`, same convention as [`way_below_graph`].
pub fn leq_graph(d: &DomainRef) -> Enumerator {
    relation_enumerator(d.clone(), format!("leq[{}]", d.name()), false)
}

fn relation_enumerator(d: DomainRef, name: String, strict: bool) -> Enumerator {
    Enumerator::native(&name, move |k, meter| {
        // One step per bit of the decoded pair, plus the comparison.
        meter.charge(1 + k.bits())?;
        let (a, b) = crate::codes::unpair(k);
        let holds = if strict { d.way_below(&a, &b) } else { d.leq(&a, &b) };
        match holds {
            Ok(true) => Ok(k.clone()),
            Ok(false) => Ok(Nat::default()),
            Err(DomainError::Machine(e)) => Err(e),
            Err(DomainError::Code(e)) => Err(MachineError::Code(e)),
            Err(_) => Ok(Nat::default()),
        }
    })
}
