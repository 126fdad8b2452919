use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::domains::{
    builtin, check_conditionally_connected, BasisValue, DomainError, DomainRef, Limit, LimitDescriptor,
};
use crate::{Nat, Rational};

type BasisFn = dyn Fn(&BasisValue) -> Result<Rational, DomainError> + Send + Sync;
type LimitFn = dyn Fn(&LimitDescriptor) -> Result<Option<Rational>, DomainError> + Send + Sync;

/// A monotone map from a domain into `[0, ∞)` ordered by `≥`.
#[derive(Clone)]
pub struct Measurement {
    name: String,
    domain: DomainRef,
    basis: Arc<BasisFn>,
    limit: Arc<LimitFn>,
}

impl core::fmt::Debug for Measurement {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Measurement").field("name", &self.name).field("domain", &self.domain.name()).finish()
    }
}

fn dyadic(k: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

impl Measurement {
    pub fn new<B, L>(name: &str, domain: DomainRef, basis: B, limit: L) -> Self
    where
        B: Fn(&BasisValue) -> Result<Rational, DomainError> + Send + Sync + 'static,
        L: Fn(&LimitDescriptor) -> Result<Option<Rational>, DomainError> + Send + Sync + 'static,
    {
        Self { name: String::from(name), domain, basis: Arc::new(basis), limit: Arc::new(limit) }
    }

    /// The constant map; monotone but not strict.
    pub fn constant(domain: DomainRef, c: Rational) -> Self {
        let c2 = c.clone();
        Self::new("constant", domain, move |_| Ok(c.clone()), move |_| Ok(Some(c2.clone())))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> &DomainRef {
        &self.domain
    }

    pub fn value(&self, v: &BasisValue) -> Result<Rational, DomainError> {
        (self.basis)(v)
    }

    pub fn value_at(&self, code: &Nat) -> Result<Rational, DomainError> {
        self.value(&self.domain.decode(code)?)
    }

    /// The value at a limit point, when known symbolically.
    pub fn limit_value(&self, x: &LimitDescriptor) -> Result<Option<Rational>, DomainError> {
        (self.limit)(x)
    }
}

/// `μ(x) = 1 − x` on `unitInterval`, `ℓ(s) = 2^{-|s|}` on `cantor`, and the
/// length `v − u` on `interval(A,B)`.
pub fn builtin_measurement(name: &str) -> Result<Measurement, DomainError> {
    let domain = builtin(name)?;
    let dn = domain.name();
    let wrong = move |v: &BasisValue| DomainError::WrongCarrier { domain: dn.clone(), value: format!("{v}") };
    let m = if name == "unitInterval" {
        Measurement::new(
            "1-x",
            domain,
            move |v| match v {
                BasisValue::Rat(q) => Ok(Rational::one() - q),
                v => Err(wrong(v)),
            },
            |x| {
                Ok(match &x.limit {
                    Limit::Real(crate::reals::RealPoint::Rational(q)) => Some(Rational::one() - q),
                    _ => None,
                })
            },
        )
    } else if name == "cantor" {
        Measurement::new(
            "2^-len",
            domain,
            move |v| match v {
                BasisValue::Str(s) => Ok(dyadic(s.len() as u64)),
                v => Err(wrong(v)),
            },
            |x| Ok(matches!(x.limit, Limit::Word(_)).then(Rational::zero)),
        )
    } else if name.starts_with("interval") {
        Measurement::new(
            "length",
            domain,
            move |v| match v {
                BasisValue::Interval(iv) => Ok(iv.width()),
                v => Err(wrong(v)),
            },
            |x| Ok(matches!(x.limit, Limit::Real(_)).then(Rational::zero)),
        )
    } else {
        return Err(DomainError::UnknownDomain(format!("no built-in measurement for {name}")));
    };
    Ok(m)
}

/// `μ(x) = 1 − Σ_{n<N} 2^{-(n+1)} [b_n ≪ x]`.
pub fn generic_measurement(d: &DomainRef, n: u64) -> Result<Measurement, DomainError> {
    if !d.has_way_below() {
        return Err(DomainError::NoWayBelow(d.name()));
    }
    let basis: Vec<BasisValue> = (0..n).map(|i| d.decode(&Nat::from(i))).collect::<Result<_, _>>()?;
    let basis = Arc::new(basis);
    let (d1, d2, b1, b2) = (d.clone(), d.clone(), basis.clone(), basis);
    Ok(Measurement::new(
        &format!("generic[{n}]"),
        d.clone(),
        move |x| {
            let mut acc = Rational::one();
            for (i, b) in b1.iter().enumerate() {
                if d1.way_below_values(b, x)? {
                    acc -= dyadic(i as u64 + 1);
                }
            }
            Ok(acc)
        },
        move |x| {
            let mut acc = Rational::one();
            for (i, b) in b2.iter().enumerate() {
                if d2.way_below_limit(b, x)? {
                    acc -= dyadic(i as u64 + 1);
                }
            }
            Ok(Some(acc))
        },
    ))
}

/// A failed order check between two basis values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderWitness {
    pub a: BasisValue,
    pub b: BasisValue,
    pub mu_a: Rational,
    pub mu_b: Rational,
}

fn decode_window(m: &Measurement, window: u64) -> Result<Vec<(BasisValue, Rational)>, DomainError> {
    (0..window)
        .map(|c| {
            let v = m.domain.decode(&Nat::from(c))?;
            let mu = m.value(&v)?;
            Ok((v, mu))
        })
        .collect()
}

/// `a ⪯ b ⇒ μ(a) ≥ μ(b)` over codes below `window`.
pub fn check_monotone(m: &Measurement, window: u64) -> Result<Option<OrderWitness>, DomainError> {
    scan_pairs(m, window, false)
}

/// `a ≺ b ⇒ μ(a) > μ(b)` over codes below `window`.
pub fn check_strict_monotone(m: &Measurement, window: u64) -> Result<Option<OrderWitness>, DomainError> {
    scan_pairs(m, window, true)
}

fn scan_pairs(m: &Measurement, window: u64, strict: bool) -> Result<Option<OrderWitness>, DomainError> {
    let vals = decode_window(m, window)?;
    for (a, mu_a) in &vals {
        for (b, mu_b) in &vals {
            if !m.domain.leq_values(a, b)? {
                continue;
            }
            let bad = if strict {
                !m.domain.leq_values(b, a)? && mu_a <= mu_b
            } else {
                mu_a < mu_b
            };
            if bad {
                return Ok(Some(OrderWitness { a: a.clone(), b: b.clone(), mu_a: mu_a.clone(), mu_b: mu_b.clone() }));
            }
        }
    }
    Ok(None)
}

/// Verdict of [`inducing_by_strictness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inducing {
    /// Strict on the sample and the domain is conditionally connected there,
    /// so strictness implies the measurement induces the Scott topology.
    Induces,
    /// Strict on the sample, but the connectedness gate failed: `x, y ⪯ z`
    /// with `x, y` incomparable. Strictness alone is insufficient here.
    StrictnessInsufficient { x: BasisValue, y: BasisValue, z: BasisValue },
    NotStrict(OrderWitness),
}

/// Applies the strictness criterion, which characterises inducing
/// measurements on conditionally connected domains only.
pub fn inducing_by_strictness(m: &Measurement, window: u64) -> Result<Inducing, DomainError> {
    if let Some(w) = check_strict_monotone(m, window)? {
        return Ok(Inducing::NotStrict(w));
    }
    Ok(match check_conditionally_connected(&m.domain, window)? {
        None => Inducing::Induces,
        Some((x, y, z)) => Inducing::StrictnessInsufficient { x, y, z },
    })
}
