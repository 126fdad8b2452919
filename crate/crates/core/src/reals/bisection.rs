use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;

use super::{RationalPoly, RealError, RealPoint};
use crate::codes::{encode_interval, Ambient, RatInterval};
use crate::domains::{DomainRef, IntervalDomain, LimitDescriptor};
use crate::elements::ComputableElement;
use crate::machine::{Enumerator, MachineError, Meter};
use crate::Rational;

/// State of a bisection run on `[lo, hi]` with `p(lo) · p(hi) ≤ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    poly: RationalPoly,
    lo: Rational,
    hi: Rational,
    left_sign: Ordering,
    exact: bool,
}

impl Bisection {
    pub fn new(poly: RationalPoly, a: Rational, b: Rational) -> Result<Self, RealError> {
        let (sa, sb) = (poly.sign_at(&a), poly.sign_at(&b));
        if a >= b || sa == Ordering::Equal || sa == sb || sb == Ordering::Equal {
            return Err(RealError::NoSignChange { poly: format!("{poly}"), a, b });
        }
        Ok(Self { poly, lo: a, hi: b, left_sign: sa, exact: false })
    }

    pub fn interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone()).expect("lo ≤ hi")
    }

    /// True once a midpoint hit the zero exactly.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// One halving step; the midpoint evaluation costs `deg + 2` steps.
    pub fn step(&mut self, meter: &mut Meter) -> Result<(), MachineError> {
        meter.charge(self.poly.coeffs().len() as u64 + 1)?;
        if self.exact {
            return Ok(());
        }
        let m = (&self.lo + &self.hi) / Rational::from_integer(2.into());
        match self.poly.sign_at(&m) {
            Ordering::Equal => {
                self.lo = m.clone();
                self.hi = m;
                self.exact = true;
            }
            s if s == self.left_sign => self.lo = m,
            _ => self.hi = m,
        }
        Ok(())
    }
}

/// The first `count` bisection intervals of `p` on `[a, b]`.
pub fn bisection_trace(p: &RationalPoly, a: &Rational, b: &Rational, count: usize) -> Result<Vec<RatInterval>, RealError> {
    let mut state = Bisection::new(p.clone(), a.clone(), b.clone())?;
    let mut meter = Meter::new(u64::MAX);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push(state.interval());
        state.step(&mut meter)?;
    }
    Ok(out)
}

/// The bisection stream of `p` on `[a, b]` as an element of `interval(a,b)`:
/// emission `i` is the interval after `i` halvings. An exact zero `m` at a
/// midpoint makes every later emission `[m, m]`.
///
/// Interval codes need endpoint indices below 2⁶⁴, so emissions past about
/// 32 halvings fail with a code error.
pub fn bisection_element(p: &RationalPoly, a: &Rational, b: &Rational) -> Result<ComputableElement, RealError> {
    let start = Bisection::new(p.clone(), a.clone(), b.clone())?;
    let ambient = Ambient::new(a.clone(), b.clone()).map_err(|e| RealError::Machine(e.into()))?;
    let domain: DomainRef = Arc::new(IntervalDomain::new(ambient.clone()));
    let name = format!("bisection[{p} on {a},{b}]");
    let stream = Enumerator::native(&name, move |n, meter| {
        let steps = n.to_u64().ok_or(MachineError::OutOfRange { op: "bisection", arg: n.clone() })?;
        let mut state = start.clone();
        for _ in 0..steps {
            state.step(meter)?;
            if state.is_exact() {
                break;
            }
        }
        Ok(encode_interval(&state.interval(), &ambient)?)
    });
    let target = LimitDescriptor::real(RealPoint::Root { poly: p.clone(), lo: a.clone(), hi: b.clone() });
    Ok(ComputableElement::new(&name, domain, stream, Some(target)))
}
