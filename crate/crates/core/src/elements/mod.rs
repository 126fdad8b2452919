//! Computable elements and functions.
//!
//! An element is a stream of basis codes that is directed and converges to
//! its (optional) symbolic target. A function carries its way-below graph
//! `{⟨n, m⟩ : b′_n ≪ f(b_m)}`, which drives [`apply_function`], and a
//! pointwise basis map used by the audits.

mod function;

use alloc::string::String;
use alloc::vec::Vec;
use alloc::sync::Arc;
use alloc::format;

use crate::domains::{BasisValue, CodePermutation, DomainError, DomainRef, LimitDescriptor, RecodedDomain};
use crate::machine::{dovetail_merge2, recode, Enumerator, MachineError};
use crate::Nat;

pub use function::{apply_function, image_stream, monotonicity_audit, ComputableFunction};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("domain mismatch: expected {expected}, found {found}")]
    DomainMismatch { expected: String, found: String },
    #[error("{0} has no way-below relation, so functions into it cannot be applied")]
    WeakTarget(String),
    #[error("no emission among the first {0} bounds the others")]
    NoRepresentative(usize),
    #[error("bridge emits ⟨{n}, {m}⟩ but b′_{n} is not way-below b_{m}")]
    UnsoundBridge { n: Nat, m: Nat },
    #[error("emission {index} is not below the target {target}")]
    AboveTarget { index: usize, target: String },
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// A stream of basis codes of `domain`, expected to be directed with
/// supremum `target`.
#[derive(Clone)]
pub struct ComputableElement {
    name: String,
    domain: DomainRef,
    stream: Enumerator,
    target: Option<LimitDescriptor>,
}

impl core::fmt::Debug for ComputableElement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ComputableElement")
            .field("name", &self.name)
            .field("domain", &self.domain.name())
            .field("target", &self.target)
            .finish()
    }
}

impl ComputableElement {
    pub fn new(name: &str, domain: DomainRef, stream: Enumerator, target: Option<LimitDescriptor>) -> Self {
        Self { name: String::from(name), domain, stream, target }
    }

    /// The element whose stream lists `codes` cyclically.
    pub fn from_codes<I, T>(name: &str, domain: DomainRef, codes: I, target: Option<LimitDescriptor>) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<Nat>,
    {
        Self::new(name, domain, Enumerator::table(codes), target)
    }

    /// The element listing `values` cyclically.
    pub fn from_values(
        name: &str,
        domain: DomainRef,
        values: &[BasisValue],
        target: Option<LimitDescriptor>,
    ) -> Result<Self, ElementError> {
        let codes = values.iter().map(|v| domain.encode(v)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_codes(name, domain, codes, target))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &DomainRef {
        &self.domain
    }

    pub fn stream(&self) -> &Enumerator {
        &self.stream
    }

    pub fn target(&self) -> Option<&LimitDescriptor> {
        self.target.as_ref()
    }

    pub fn with_target(mut self, target: Option<LimitDescriptor>) -> Self {
        self.target = target;
        self
    }

    /// The first `count` emitted codes.
    pub fn emissions(&self, count: usize, fuel: u64) -> Result<Vec<Nat>, ElementError> {
        Ok(self.stream.take(count as u64, fuel)?)
    }

    pub fn decoded(&self, count: usize, fuel: u64) -> Result<Vec<BasisValue>, ElementError> {
        self.emissions(count, fuel)?
            .iter()
            .map(|c| self.domain.decode(c).map_err(ElementError::from))
            .collect()
    }

    /// Checks `b ⪯ target` for the first `count` emissions.
    pub fn target_audit(&self, count: usize, fuel: u64) -> Result<(), ElementError> {
        let Some(t) = &self.target else { return Ok(()) };
        for (index, v) in self.decoded(count, fuel)?.iter().enumerate() {
            if !self.domain.leq_to_limit(v, t)? {
                return Err(ElementError::AboveTarget { index, target: format!("{t}") });
            }
        }
        Ok(())
    }
}

/// Outcome of [`directedness_audit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Directedness {
    /// Every pair among the first `n` emissions has a bound among the first
    /// `budget` emissions.
    Pass,
    /// Emissions `i` and `j` found no common upper bound within the budget.
    /// This is inconclusive: a later emission might still join them.
    Unjoined { i: usize, j: usize, a: BasisValue, b: BasisValue },
}

/// Semi-decides directedness of the first `n` emissions, searching the first
/// `budget` emissions for joint upper bounds.
pub fn directedness_audit(
    e: &ComputableElement,
    n: usize,
    budget: usize,
    fuel: u64,
) -> Result<Directedness, ElementError> {
    let vals = e.decoded(n.max(budget), fuel)?;
    let d = &e.domain;
    let width = vals.len();
    let mut up = alloc::vec![false; n * width];
    for i in 0..n {
        for k in 0..width {
            up[i * width + k] = d.leq_values(&vals[i], &vals[k])?;
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if !(0..width).any(|k| up[i * width + k] && up[j * width + k]) {
                return Ok(Directedness::Unjoined { i, j, a: vals[i].clone(), b: vals[j].clone() });
            }
        }
    }
    Ok(Directedness::Pass)
}

/// The best approximation after `n` emissions: the first emission among the
/// first `n` lying above all of them, or failing that the first emission
/// within `budget` that does.
pub fn approximant(e: &ComputableElement, n: usize, budget: usize, fuel: u64) -> Result<Nat, ElementError> {
    let codes = e.emissions(n.max(budget), fuel)?;
    let vals = codes
        .iter()
        .map(|c| e.domain.decode(c))
        .collect::<Result<Vec<_>, _>>()?;
    for (k, cand) in vals.iter().enumerate() {
        let mut bounds = true;
        for v in &vals[..n] {
            if !e.domain.leq_values(v, cand)? {
                bounds = false;
                break;
            }
        }
        if bounds {
            return Ok(codes[k].clone());
        }
    }
    Err(ElementError::NoRepresentative(n))
}

/// Reads `e` through a second finite map of the same basis after checking
/// that `perm` inverts on codes `< sample`.
pub fn recode_element(
    e: &ComputableElement,
    perm: &CodePermutation,
    sample: u64,
) -> Result<ComputableElement, ElementError> {
    perm.check(sample)?;
    let domain: DomainRef = Arc::new(RecodedDomain::new(e.domain.clone(), perm.clone()));
    let stream = recode(&e.stream, perm.forward());
    Ok(ComputableElement::new(&format!("{}/{}", e.name, perm.name()), domain, stream, e.target.clone()))
}

/// `{⟨n, m⟩ : b′_n ≪ b_m}` for a target basis `b′` and a source basis `b`
/// whose values live in the same domain.
pub fn bridge_graph(source: &DomainRef, target: &DomainRef) -> Enumerator {
    let (s, t) = (source.clone(), target.clone());
    let name = format!("bridge[{} -> {}]", s.name(), t.name());
    Enumerator::native(&name, move |k, meter| {
        meter.charge(1 + k.bits())?;
        let (n, m) = crate::codes::unpair(k);
        let holds = match (t.decode(&n), s.decode(&m)) {
            (Ok(a), Ok(b)) => t.way_below_values(&a, &b).unwrap_or(false),
            _ => false,
        };
        Ok(if holds { k.clone() } else { Nat::default() })
    })
}

/// Moves `e` to the basis of `target` through `bridge`, whose range must be
/// `{⟨n, m⟩ : b′_n ≪ b_m}`. The first `sample` bridge emissions are
/// replayed against both descriptors.
pub fn change_basis(
    e: &ComputableElement,
    target: &DomainRef,
    bridge: &Enumerator,
    sample: u64,
    fuel: u64,
) -> Result<ComputableElement, ElementError> {
    for k in 0..sample {
        let v = bridge.evaluate_u64(k, fuel)?.value;
        let (n, m) = crate::codes::unpair(&v);
        let a = target.decode(&n)?;
        let b = e.domain.decode(&m)?;
        if !target.way_below_values(&a, &b)? {
            return Err(ElementError::UnsoundBridge { n, m });
        }
    }
    let stream = dovetail_merge2(&e.stream, bridge);
    Ok(ComputableElement::new(
        &format!("{}@{}", e.name, target.name()),
        target.clone(),
        stream,
        e.target.clone(),
    ))
}
