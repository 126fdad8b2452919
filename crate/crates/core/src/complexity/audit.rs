use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use super::{ComplexityBound, Measurement};
use crate::codes::unpair;
use crate::domains::{BasisValue, DomainError, LimitDescriptor};
use crate::elements::{directedness_audit, ComputableElement, ComputableFunction, Directedness, ElementError};
use crate::machine::{Enumerator, MachineError};
use crate::{Nat, Rational};

/// The precision `ε(n)` an approximation at stage `n` must reach.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    /// `2^{-n}`.
    #[default]
    Dyadic,
    /// `1/(n+1)`.
    Harmonic,
}

impl Precision {
    pub fn at(self, n: u64) -> Rational {
        match self {
            Precision::Dyadic => Rational::new(BigInt::one(), BigInt::one() << n),
            Precision::Harmonic => Rational::new(BigInt::one(), BigInt::from(n + 1)),
        }
    }
}

/// One audited stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub n: u64,
    pub code: Nat,
    pub steps: u64,
    pub bound: Option<u64>,
    pub gap: Rational,
    pub eps: Rational,
    /// `b ⪯ target` for the emitted basis element.
    pub below: bool,
}

impl AuditRow {
    pub fn steps_ok(&self) -> bool {
        self.bound.is_some_and(|b| self.steps <= b)
    }

    pub fn gap_ok(&self) -> bool {
        self.gap < self.eps
    }

    pub fn passed(&self) -> bool {
        self.steps_ok() && self.gap_ok() && self.below
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditReport {
    pub subject: String,
    pub bound: String,
    pub rows: Vec<AuditRow>,
    pub directed: bool,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.directed && self.rows.iter().all(AuditRow::passed)
    }

    pub fn failures(&self) -> Vec<u64> {
        self.rows.iter().filter(|r| !r.passed()).map(|r| r.n).collect()
    }

    pub fn steps(&self) -> Vec<(u64, u64)> {
        self.rows.iter().map(|r| (r.n, r.steps)).collect()
    }
}

/// Checks the complexity of the element `⊔ b_{φ(n)} = x` against `t`: for
/// `n < count`, `φ(n)` runs within `t(n)` steps, `μ(b_{φ(n)}) − μ(x) < ε(n)`
/// and `b_{φ(n)} ⪯ x`; the emissions are also audited for directedness.
pub fn element_complexity_audit(
    phi: &Enumerator,
    t: &ComplexityBound,
    mu: &Measurement,
    target: &LimitDescriptor,
    count: u64,
    precision: Precision,
    fuel: u64,
) -> Result<AuditReport, ElementError> {
    let d = mu.domain();
    let mu_x = mu.limit_value(target)?.ok_or_else(|| d.unsupported(target))?;
    let mut rows = Vec::with_capacity(count as usize);
    for n in 0..count {
        let ev = phi.evaluate_u64(n, fuel)?;
        let v = d.decode(&ev.value)?;
        rows.push(AuditRow {
            n,
            steps: ev.steps,
            bound: t.at(n),
            gap: mu.value(&v)? - &mu_x,
            eps: precision.at(n),
            below: d.leq_to_limit(&v, target)?,
            code: ev.value,
        });
    }
    let e = ComputableElement::new("phi", d.clone(), phi.clone(), Some(target.clone()));
    let k = count as usize;
    let directed = directedness_audit(&e, k, k, fuel)? == Directedness::Pass;
    Ok(AuditReport { subject: format!("{target}"), bound: t.describe(), rows, directed })
}

/// Checks the complexity of `f` against `t`: for pair codes `k = ⟨m, p⟩`
/// below `count`, `φ(k)` runs within `t(k)` steps, emits `b′ ⪯ f(b_m)` with
/// `μ(b′) − μ(f(b_m)) < ε(p)`; for every audited `m` the emissions along
/// `p` form a chain.
pub fn function_complexity_audit(
    f: &ComputableFunction,
    phi: &Enumerator,
    t: &ComplexityBound,
    mu: &Measurement,
    count: u64,
    precision: Precision,
    fuel: u64,
) -> Result<AuditReport, ElementError> {
    let d = f.target();
    let mut rows = Vec::with_capacity(count as usize);
    let mut by_m: Vec<(Nat, Nat, BasisValue)> = Vec::new();
    for k in 0..count {
        let ev = phi.evaluate_u64(k, fuel)?;
        let (m, p) = unpair(&Nat::from(k));
        let fb = f.image(&f.source().decode(&m)?)?;
        let v = d.decode(&ev.value)?;
        let p64 = u64::try_from(&p).map_err(|_| MachineError::OutOfRange { op: "audit", arg: p.clone() })?;
        rows.push(AuditRow {
            n: k,
            steps: ev.steps,
            bound: t.at(k),
            gap: mu.value(&v)? - mu.value(&fb)?,
            eps: precision.at(p64),
            below: d.leq_values(&v, &fb)?,
            code: ev.value,
        });
        by_m.push((m, p, v));
    }
    by_m.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    let mut directed = true;
    for w in by_m.windows(2) {
        if w[0].0 == w[1].0 && !d.leq_values(&w[0].2, &w[1].2)? {
            directed = false;
        }
    }
    Ok(AuditReport { subject: String::from(f.name()), bound: t.describe(), rows, directed })
}

/// Verdict of [`polytime_check`].
#[derive(Clone, Debug, PartialEq)]
pub enum PolyFit {
    /// `steps(n) ≤ constant · (n+1)^degree` on the audited range.
    Degree { degree: u32, constant: u64 },
    /// The growth exponent estimated on the upper half of the range exceeds
    /// every degree up to the maximum.
    NoFit { estimated: f64 },
}

impl core::fmt::Display for PolyFit {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PolyFit::Degree { degree, constant } => write!(f, "dominated by {constant}*(n+1)^{degree}"),
            PolyFit::NoFit { estimated } => write!(f, "no polynomial fit (growth exponent ~{estimated:.2})"),
        }
    }
}

/// Finds the least degree `d ≤ max_degree` whose polynomial dominates the
/// observed steps with the growth seen on the range.
///
/// Every finite profile is dominated by some polynomial, so the degree is
/// read off the log-log slope between the middle and the end of the range,
/// `log(s(N)/s(N/2)) / log((N+1)/(N/2+1))`, with a tolerance of ¼. The
/// constant is then the least `C` with `s(n) ≤ C (n+1)^d` on the range.
pub fn polytime_check(steps: &[(u64, u64)], max_degree: u32) -> PolyFit {
    let sorted = {
        let mut s = steps.to_vec();
        s.sort_unstable();
        s
    };
    let (last_n, last_s) = *sorted.last().unwrap_or(&(0, 1));
    let half = sorted.iter().find(|(n, _)| *n >= last_n / 2).copied().unwrap_or((0, 1));
    let estimated = if last_n > half.0 {
        let ratio = last_s.max(1) as f64 / half.1.max(1) as f64;
        let span = (last_n + 1) as f64 / (half.0 + 1) as f64;
        (libm::log(ratio) / libm::log(span)).max(0.0)
    } else {
        0.0
    };
    let degree = libm::ceil(estimated - 0.25).max(0.0) as u32;
    if degree > max_degree {
        return PolyFit::NoFit { estimated };
    }
    let constant = sorted
        .iter()
        .map(|&(n, s)| {
            let p = (n + 1).saturating_pow(degree);
            s.div_ceil(p)
        })
        .max()
        .unwrap_or(0);
    PolyFit::Degree { degree, constant }
}

/// Truncation witness for the identity on `cantor`: `φ(⟨m, p⟩)` is the code
/// of the first `min(p, |b_m|)` bits of `b_m`.
pub fn cantor_identity_witness() -> Enumerator {
    let src = "(let (fst n) (let (snd n) (let (log2 (+ $1 1)) \
               (if (<= $0 $1) $2 \
                 (+ (- (pow 2 $1) 1) (/ (- (+ $2 1) (pow 2 $0)) (pow 2 (- $0 $1))))))))";
    Enumerator::program(src.parse().expect("valid program"))
}

/// Witness for a constant function: `φ(⟨m, p⟩) = c`.
pub fn constant_witness(code: Nat) -> Enumerator {
    Enumerator::constant(code)
}

/// Witness for [`ComputableFunction::scale3`]: `f(b_m)` rounded outward to
/// the `2^{-(p+2)}` grid and clipped to the target ambient, charging `p + 1`
/// steps for the rounding.
pub fn scale3_witness(f: &ComputableFunction) -> Enumerator {
    let f = f.clone();
    Enumerator::native("scale3-witness", move |k, meter| {
        let (m, p) = unpair(k);
        let p = u64::try_from(&p).map_err(|_| MachineError::OutOfRange { op: "scale3", arg: p.clone() })?;
        meter.charge(p + 1 + m.bits())?;
        let out = (|| -> Result<Nat, DomainError> {
            let fb = f.image(&f.source().decode(&m)?)?;
            let BasisValue::Interval(iv) = fb else { return Err(f.target().wrong(&fb)) };
            let scale = BigInt::one() << (p + 2);
            let floor = |x: &Rational| Rational::new((x * &scale).floor().to_integer(), scale.clone());
            let ceil = |x: &Rational| Rational::new((x * &scale).ceil().to_integer(), scale.clone());
            let target = f.target().decode(&Nat::default())?;
            let BasisValue::Interval(amb) = target else { return Err(f.target().wrong(&target)) };
            let lo = floor(iv.lo()).max(amb.lo().clone());
            let hi = ceil(iv.hi()).min(amb.hi().clone());
            let out = crate::codes::RatInterval::new(lo, hi)?;
            f.target().encode(&BasisValue::Interval(out))
        })();
        out.map_err(|e| match e {
            DomainError::Machine(m) => m,
            DomainError::Code(c) => c.into(),
            _ => MachineError::OutOfRange { op: "scale3", arg: k.clone() },
        })
    })
}
