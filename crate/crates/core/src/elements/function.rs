use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{ComputableElement, ElementError};
use crate::codes::{unpair, Ambient, RatInterval};
use crate::domains::{
    way_below_graph, BasisValue, DomainError, DomainRef, IntervalDomain, Limit, LimitDescriptor,
};
use crate::machine::{dovetail_merge2, Enumerator};
use crate::{Nat, Rational};

type ImageFn = dyn Fn(&BasisValue) -> Result<BasisValue, DomainError> + Send + Sync;
type LimitFn = dyn Fn(&LimitDescriptor) -> Option<LimitDescriptor> + Send + Sync;

/// A continuous map between domains given by its way-below graph and a
/// pointwise image of basis elements.
#[derive(Clone)]
pub struct ComputableFunction {
    name: String,
    source: DomainRef,
    target: DomainRef,
    image: Arc<ImageFn>,
    limit_image: Arc<LimitFn>,
    graph: Option<Enumerator>,
}

impl core::fmt::Debug for ComputableFunction {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("ComputableFunction")
            .field("name", &self.name)
            .field("source", &self.source.name())
            .field("target", &self.target.name())
            .finish()
    }
}

impl ComputableFunction {
    /// Builds a function whose graph is derived from `image`: the graph
    /// emits `⟨n, m⟩` when `b′_n ≪ image(b_m)`. The graph is absent when the
    /// target has no way-below relation.
    pub fn from_image<F, L>(name: &str, source: DomainRef, target: DomainRef, image: F, limit_image: L) -> Self
    where
        F: Fn(&BasisValue) -> Result<BasisValue, DomainError> + Send + Sync + 'static,
        L: Fn(&LimitDescriptor) -> Option<LimitDescriptor> + Send + Sync + 'static,
    {
        let image: Arc<ImageFn> = Arc::new(image);
        let graph = target.has_way_below().then(|| {
            let (s, t, img) = (source.clone(), target.clone(), image.clone());
            Enumerator::native(&format!("graph[{name}]"), move |k, meter| {
                meter.charge(1 + k.bits())?;
                let (n, m) = unpair(k);
                let holds = match (t.decode(&n), s.decode(&m)) {
                    (Ok(a), Ok(b)) => img(&b).and_then(|fb| t.way_below_values(&a, &fb)).unwrap_or(false),
                    _ => false,
                };
                Ok(if holds { k.clone() } else { Nat::default() })
            })
        });
        Self {
            name: String::from(name),
            source,
            target,
            image,
            limit_image: Arc::new(limit_image),
            graph,
        }
    }

    /// The identity, whose graph is the way-below graph of `d`.
    pub fn identity(d: DomainRef) -> Self {
        let graph = way_below_graph(&d).ok();
        Self {
            name: String::from("identity"),
            source: d.clone(),
            target: d,
            image: Arc::new(|v| Ok(v.clone())),
            limit_image: Arc::new(|x| Some(x.clone())),
            graph,
        }
    }

    /// The constant map onto the basis element `c` of `target`.
    pub fn constant(source: DomainRef, target: DomainRef, c: BasisValue) -> Result<Self, ElementError> {
        target.encode(&c)?;
        let name = format!("const[{c}]");
        let limit = basis_limit(&c).map(|l| LimitDescriptor::new(format!("{c}"), l));
        Ok(Self::from_image(&name, source, target, move |_| Ok(c.clone()), move |_| limit.clone()))
    }

    /// `x ↦ 3x` from `interval(A,B)` to `interval(3A,3B)`.
    pub fn scale3(a: Rational, b: Rational) -> Result<Self, ElementError> {
        let three = Rational::from_integer(BigInt::from(3));
        let zero = Rational::default();
        let source: DomainRef = Arc::new(IntervalDomain::new(Ambient::new(a.clone(), b.clone()).map_err(DomainError::from)?));
        let target: DomainRef = Arc::new(IntervalDomain::new(
            Ambient::new(&a * &three, &b * &three).map_err(DomainError::from)?,
        ));
        let (f, o) = (three.clone(), zero.clone());
        Ok(Self::from_image(
            "scale3",
            source,
            target,
            move |v| match v {
                BasisValue::Interval(iv) => Ok(BasisValue::Interval(iv.affine(&f, &o))),
                v => Err(DomainError::WrongCarrier { domain: String::from("interval"), value: format!("{v}") }),
            },
            move |x| match &x.limit {
                Limit::Real(p) => Some(LimitDescriptor::new(
                    format!("3*{}", x.name),
                    Limit::Real(p.clone().affine(three.clone(), zero.clone())),
                )),
                _ => None,
            },
        ))
    }

    /// A map on `interval(0,3)` that is the identity except for
    /// `[1,2] ↦ [0,1]` and `[6/5,9/5] ↦ [2,3]`; it is not monotone.
    pub fn broken_demo() -> Self {
        let q = |n: i64, d: i64| Rational::new(BigInt::from(n), BigInt::from(d));
        let d: DomainRef = Arc::new(IntervalDomain::new(Ambient::new(q(0, 1), q(3, 1)).expect("0 < 3")));
        let iv = |a, b| RatInterval::new(a, b).expect("ordered");
        let table = [
            (iv(q(1, 1), q(2, 1)), iv(q(0, 1), q(1, 1))),
            (iv(q(6, 5), q(9, 5)), iv(q(2, 1), q(3, 1))),
        ];
        Self::from_image(
            "broken",
            d.clone(),
            d,
            move |v| {
                if let BasisValue::Interval(x) = v {
                    for (from, to) in &table {
                        if x == from {
                            return Ok(BasisValue::Interval(to.clone()));
                        }
                    }
                }
                Ok(v.clone())
            },
            |_| None,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &DomainRef {
        &self.source
    }

    pub fn target(&self) -> &DomainRef {
        &self.target
    }

    pub fn graph(&self) -> Option<&Enumerator> {
        self.graph.as_ref()
    }

    pub fn image(&self, v: &BasisValue) -> Result<BasisValue, DomainError> {
        (self.image)(v)
    }

    /// Image of a basis code as a target code.
    pub fn image_code(&self, code: &Nat) -> Result<Nat, DomainError> {
        let v = self.source.decode(code)?;
        self.target.encode(&self.image(&v)?)
    }

    pub fn limit_image(&self, x: &LimitDescriptor) -> Option<LimitDescriptor> {
        (self.limit_image)(x)
    }

    /// Replays the first `sample` graph emissions: each `⟨n, m⟩` must have
    /// `b′_n ≪ f(b_m)`.
    pub fn graph_audit(&self, sample: u64, fuel: u64) -> Result<(), ElementError> {
        let graph = self.graph.as_ref().ok_or_else(|| ElementError::WeakTarget(self.target.name()))?;
        for k in 0..sample {
            let v = graph.evaluate_u64(k, fuel)?.value;
            let (n, m) = unpair(&v);
            let a = self.target.decode(&n)?;
            let fb = self.image(&self.source.decode(&m)?)?;
            if !self.target.way_below_values(&a, &fb)? && v != Nat::default() {
                return Err(ElementError::UnsoundBridge { n, m });
            }
        }
        Ok(())
    }
}

fn basis_limit(v: &BasisValue) -> Option<Limit> {
    match v {
        BasisValue::Rat(q) => Some(Limit::Real(crate::reals::RealPoint::Rational(q.clone()))),
        BasisValue::Interval(iv) if iv.is_degenerate() => {
            Some(Limit::Real(crate::reals::RealPoint::Rational(iv.lo().clone())))
        }
        _ => None,
    }
}

/// `f(x)` for a computable element `x`: the stream
/// `dovetail_merge2(x.stream, f.graph)` emits every `b′_n` with
/// `b′_n ≪ f(b_m)` for some emitted `b_m`, and ⊥ in between.
pub fn apply_function(f: &ComputableFunction, e: &ComputableElement) -> Result<ComputableElement, ElementError> {
    if f.source.name() != e.domain().name() {
        return Err(ElementError::DomainMismatch { expected: f.source.name(), found: e.domain().name() });
    }
    let graph = f.graph.as_ref().ok_or_else(|| ElementError::WeakTarget(f.target.name()))?;
    let stream = dovetail_merge2(e.stream(), graph);
    let target = e.target().and_then(|t| f.limit_image(t));
    Ok(ComputableElement::new(&format!("{}({})", f.name, e.name()), f.target.clone(), stream, target))
}

/// The pointwise image stream `n ↦ f(b_{e(n)})`. It has the same supremum
/// as [`apply_function`] for monotone continuous `f` and stays cheap when the
/// codes of `e` are too large for the dovetailed graph search to reach.
pub fn image_stream(f: &ComputableFunction, e: &ComputableElement) -> Result<ComputableElement, ElementError> {
    if f.source.name() != e.domain().name() {
        return Err(ElementError::DomainMismatch { expected: f.source.name(), found: e.domain().name() });
    }
    let (g, func) = (e.stream().clone(), f.clone());
    let stream = Enumerator::native(&format!("image[{}]", f.name), move |n, meter| {
        let c = g.eval_metered(n, meter)?;
        meter.charge(1 + c.bits())?;
        func.image_code(&c).map_err(|err| match err {
            DomainError::Machine(m) => m,
            DomainError::Code(c) => c.into(),
            _ => crate::machine::MachineError::OutOfRange { op: "image", arg: c.clone() },
        })
    });
    let target = e.target().and_then(|t| f.limit_image(t));
    Ok(ComputableElement::new(&format!("{}[{}]", f.name, e.name()), f.target.clone(), stream, target))
}

/// Outcome of [`monotonicity_audit`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Pass { pairs: usize },
    Violation { a: BasisValue, b: BasisValue, fa: BasisValue, fb: BasisValue },
}

/// Checks `a ⪯ b ⇒ f(a) ⪯ f(b)` over all source codes below `n`.
pub fn monotonicity_audit(f: &ComputableFunction, n: u64) -> Result<Monotonicity, ElementError> {
    let vals = (0..n)
        .map(|c| f.source.decode(&Nat::from(c)))
        .collect::<Result<Vec<_>, _>>()?;
    let imgs = vals.iter().map(|v| f.image(v)).collect::<Result<Vec<_>, _>>()?;
    let mut pairs = 0;
    for (i, a) in vals.iter().enumerate() {
        for (j, b) in vals.iter().enumerate() {
            if f.source.leq_values(a, b)? {
                pairs += 1;
                if !f.target.leq_values(&imgs[i], &imgs[j])? {
                    return Ok(Monotonicity::Violation {
                        a: a.clone(),
                        b: b.clone(),
                        fa: imgs[i].clone(),
                        fb: imgs[j].clone(),
                    });
                }
            }
        }
    }
    Ok(Monotonicity::Pass { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::builtin;
    use crate::machine::DEFAULT_FUEL;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn identity_and_scale_are_monotone() {
        let id = ComputableFunction::identity(builtin("cantor").unwrap());
        assert!(matches!(monotonicity_audit(&id, 40).unwrap(), Monotonicity::Pass { .. }));
        let s = ComputableFunction::scale3(q(0, 1), q(1, 1)).unwrap();
        assert!(matches!(monotonicity_audit(&s, 60).unwrap(), Monotonicity::Pass { .. }));
    }

    #[test]
    fn broken_map_has_witness() {
        let f = ComputableFunction::broken_demo();
        match monotonicity_audit(&f, 60).unwrap() {
            Monotonicity::Violation { a, b, fa, fb } => {
                assert!(f.source().leq_values(&a, &b).unwrap());
                assert!(!f.target().leq_values(&fa, &fb).unwrap());
            }
            Monotonicity::Pass { .. } => panic!("broken map passed"),
        }
    }

    #[test]
    fn weak_target_is_refused() {
        let d = builtin("qDomain").unwrap();
        let id = ComputableFunction::identity(d.clone());
        let e = ComputableElement::from_codes("e", d, [0u32], None);
        assert!(matches!(apply_function(&id, &e), Err(ElementError::WeakTarget(_))));
    }

    #[test]
    fn mismatched_domains_are_refused() {
        let id = ComputableFunction::identity(builtin("cantor").unwrap());
        let e = ComputableElement::from_codes("e", builtin("turing").unwrap(), [0u32], None);
        assert!(matches!(apply_function(&id, &e), Err(ElementError::DomainMismatch { .. })));
    }

    #[test]
    fn graphs_are_sound() {
        let s = ComputableFunction::scale3(q(0, 1), q(1, 1)).unwrap();
        s.graph_audit(500, DEFAULT_FUEL).unwrap();
        ComputableFunction::identity(builtin("cantor").unwrap()).graph_audit(500, DEFAULT_FUEL).unwrap();
    }

    #[test]
    fn scale3_maps_limits() {
        let s = ComputableFunction::scale3(q(1, 1), q(2, 1)).unwrap();
        let t = s.limit_image(&LimitDescriptor::sqrt2()).unwrap();
        let p = t.point().unwrap();
        assert!(p.gt(&q(424, 100)) && p.lt(&q(425, 100)));
    }
}
