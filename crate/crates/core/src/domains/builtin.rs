use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{BasisValue, DomainError, DomainRef, EffectiveDomain, Limit, LimitDescriptor};
use crate::codes::{
    decode_fraction, decode_interval, decode_string, decode_unit_closed, encode_fraction,
    encode_interval, encode_string, encode_unit_closed, pair, unpair, Ambient, BitString, RatInterval,
};
use crate::machine::Expr;
use crate::reals::RealPoint;
use crate::{Nat, Rational};

/// Looks up a built-in domain: `cantor`, `interval(A,B)` (plain `interval`
/// is `interval(0,1)`), `unitInterval`, `turing`, `flippedUnit`, `qDomain`
/// or `fan`.
pub fn builtin(name: &str) -> Result<DomainRef, DomainError> {
    let unknown = || DomainError::UnknownDomain(String::from(name));
    let d: DomainRef = match name.trim() {
        "cantor" => Arc::new(Cantor),
        "interval" => Arc::new(IntervalDomain::unit()),
        "unitInterval" => Arc::new(UnitInterval),
        "turing" => Arc::new(Turing),
        "flippedUnit" => Arc::new(FlippedUnit),
        "qDomain" => Arc::new(QDomain),
        "fan" => Arc::new(Fan),
        other => {
            let inner = other
                .strip_prefix("interval(")
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(unknown)?;
            let (a, b) = inner.split_once(',').ok_or_else(unknown)?;
            let a = parse_rational(a).map_err(|_| unknown())?;
            let b = parse_rational(b).map_err(|_| unknown())?;
            Arc::new(IntervalDomain::new(Ambient::new(a, b)?))
        }
    };
    Ok(d)
}

fn parse_rational(s: &str) -> Result<Rational, ()> {
    s.trim().replace('\u{2212}', "-").parse::<Rational>().map_err(|_| ())
}

fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// Finite binary words under the prefix order; every word is compact, so
/// way-below is the prefix order too. Limits are infinite words.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cantor;

impl EffectiveDomain for Cantor {
    fn name(&self) -> String {
        String::from("cantor")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Str(decode_string(code)))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        match value {
            BasisValue::Str(s) => Ok(encode_string(s)),
            v => Err(self.wrong(v)),
        }
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Str(text.parse::<BitString>()?))
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        match (a, b) {
            (BasisValue::Str(s), BasisValue::Str(t)) => Ok(s.is_prefix_of(t)),
            (BasisValue::Str(_), v) | (v, _) => Err(self.wrong(v)),
        }
    }

    fn has_way_below(&self) -> bool {
        true
    }

    fn way_below_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        self.leq_values(a, b)
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        match (a, &x.limit) {
            (BasisValue::Str(s), Limit::Word(w)) => Ok(w.has_prefix(s)),
            (BasisValue::Str(_), _) => Err(self.unsupported(x)),
            (v, _) => Err(self.wrong(v)),
        }
    }

    fn way_below_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        self.leq_to_limit(a, x)
    }

    fn way_below_program(&self) -> Option<Expr> {
        // a = $3, b = $2, |a| = $1, |b| = $0; a is a prefix of b when |a| ≤ |b|
        // and the value of b shifted right by |b| − |a| equals the value of a.
        let src = "(let (fst n) (let (snd n) (let (log2 (+ $1 1)) (let (log2 (+ $1 1)) \
                   (if (<= $1 $0) \
                       (if (= (/ (- (+ $2 1) (pow 2 $0)) (pow 2 (- $0 $1))) (- (+ $3 1) (pow 2 $1))) n 0) \
                       0)))))";
        Some(src.parse().expect("valid program"))
    }
}

/// Rational subintervals of `[A, B]` under reverse inclusion.
#[derive(Clone, Debug)]
pub struct IntervalDomain {
    ambient: Ambient,
}

impl IntervalDomain {
    pub fn new(ambient: Ambient) -> Self {
        Self { ambient }
    }

    pub fn unit() -> Self {
        Self::new(Ambient::unit())
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    fn interval<'v>(&self, v: &'v BasisValue) -> Result<&'v RatInterval, DomainError> {
        match v {
            BasisValue::Interval(iv) => Ok(iv),
            v => Err(self.wrong(v)),
        }
    }

    /// `[u, v] ≪ [x, y]` iff `(u = A ∨ u < x) ∧ (v = B ∨ y < v)`.
    pub fn way_below_intervals(&self, a: &RatInterval, b: &RatInterval) -> bool {
        let left = a.lo() == self.ambient.a() || a.lo() < b.lo();
        let right = a.hi() == self.ambient.b() || b.hi() < a.hi();
        left && right
    }
}

impl EffectiveDomain for IntervalDomain {
    fn name(&self) -> String {
        format!("interval({},{})", self.ambient.a(), self.ambient.b())
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Interval(decode_interval(code, &self.ambient)?))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        Ok(encode_interval(self.interval(value)?, &self.ambient)?)
    }

    /// `[a,b]`, `a,b` or `a b` with exact rational endpoints.
    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        let bad = || DomainError::WrongCarrier { domain: self.name(), value: String::from(text) };
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let (a, b) = inner
            .split_once(',')
            .or_else(|| inner.trim().split_once(char::is_whitespace))
            .ok_or_else(bad)?;
        let lo = parse_rational(a).map_err(|_| bad())?;
        let hi = parse_rational(b).map_err(|_| bad())?;
        Ok(BasisValue::Interval(RatInterval::new(lo, hi)?))
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(self.interval(b)?.is_subset_of(self.interval(a)?))
    }

    fn has_way_below(&self) -> bool {
        true
    }

    fn way_below_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(self.way_below_intervals(self.interval(a)?, self.interval(b)?))
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        let iv = self.interval(a)?;
        let p = x.point().ok_or_else(|| self.unsupported(x))?;
        Ok(!p.lt(iv.lo()) && !p.gt(iv.hi()))
    }

    fn way_below_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        let iv = self.interval(a)?;
        let p = x.point().ok_or_else(|| self.unsupported(x))?;
        let left = iv.lo() == self.ambient.a() || p.gt(iv.lo());
        let right = iv.hi() == self.ambient.b() || p.lt(iv.hi());
        Ok(left && right)
    }
}

/// Rationals in `[0, 1)` in fraction-code order under `≤`, with
/// `q ≪ q′` iff `q < q′` or `q = 0`. Limits are reals in `[0, 1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitInterval;

fn rat<'v>(d: &dyn EffectiveDomain, v: &'v BasisValue) -> Result<&'v Rational, DomainError> {
    match v {
        BasisValue::Rat(q) => Ok(q),
        v => Err(d.wrong(v)),
    }
}

impl EffectiveDomain for UnitInterval {
    fn name(&self) -> String {
        String::from("unitInterval")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Rat(decode_fraction(code)?))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        Ok(encode_fraction(rat(self, value)?)?)
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        let q = parse_rational(text)
            .map_err(|_| DomainError::WrongCarrier { domain: self.name(), value: String::from(text) })?;
        Ok(BasisValue::Rat(q))
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(rat(self, a)? <= rat(self, b)?)
    }

    fn has_way_below(&self) -> bool {
        true
    }

    fn way_below_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        let (q, r) = (rat(self, a)?, rat(self, b)?);
        Ok(q.is_zero() || q < r)
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        let p = x.point().ok_or_else(|| self.unsupported(x))?;
        Ok(!p.lt(rat(self, a)?))
    }

    fn way_below_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        let p = x.point().ok_or_else(|| self.unsupported(x))?;
        let q = rat(self, a)?;
        Ok(q.is_zero() || p.gt(q))
    }

    fn way_below_program(&self) -> Option<Expr> {
        // a = $1, b = $0: holds when a decodes to 0 or num(a)·den(b) < num(b)·den(a).
        let src = "(let (fst n) (let (snd n) \
                   (if (= $1 0) n (if (< (* (num $1) (den $0)) (* (num $0) (den $1))) n 0))))";
        Some(src.parse().expect("valid program"))
    }
}

/// ℕ under `≤` as a weak basis whose limits are infinite sets `A`, with
/// `n ⪯ A` iff `n ∈ A` and `⊆` between limits.
#[derive(Clone, Copy, Debug, Default)]
pub struct Turing;

fn nat<'v>(d: &dyn EffectiveDomain, v: &'v BasisValue) -> Result<&'v Nat, DomainError> {
    match v {
        BasisValue::Nat(n) => Ok(n),
        v => Err(d.wrong(v)),
    }
}

impl EffectiveDomain for Turing {
    fn name(&self) -> String {
        String::from("turing")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Nat(code.clone()))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        nat(self, value).cloned()
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        text.trim()
            .parse::<Nat>()
            .map(BasisValue::Nat)
            .map_err(|_| DomainError::WrongCarrier { domain: self.name(), value: String::from(text) })
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(nat(self, a)? <= nat(self, b)?)
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        match &x.limit {
            Limit::Set(s) => Ok(s.contains(nat(self, a)?)),
            _ => Err(self.unsupported(x)),
        }
    }
}

/// `[0, 1]` with `≤` on `[0, ½]` and `≥` on `[½, 1]`, so that `½` is the top.
/// Only a weak basis exists: nothing is way-below `½`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FlippedUnit;

impl FlippedUnit {
    fn below(x: &Rational, y: &Rational) -> bool {
        let h = half();
        (x <= &h && y <= &h && x <= y) || (x >= &h && y >= &h && y <= x)
    }
}

impl EffectiveDomain for FlippedUnit {
    fn name(&self) -> String {
        String::from("flippedUnit")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        Ok(BasisValue::Rat(decode_unit_closed(code)?))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        Ok(encode_unit_closed(rat(self, value)?)?)
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        UnitInterval.parse_value(text)
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(Self::below(rat(self, a)?, rat(self, b)?))
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        let q = rat(self, a)?;
        let p = x.point().ok_or_else(|| self.unsupported(x))?;
        let h = half();
        let ph = p.cmp_rational(&h);
        let pq = p.cmp_rational(q);
        let low = q <= &h && ph != Ordering::Greater && pq != Ordering::Less;
        let high = q >= &h && ph != Ordering::Less && pq != Ordering::Greater;
        Ok(low || high)
    }

    fn witness_family(
        &self,
        a: &BasisValue,
        x: &LimitDescriptor,
        count: usize,
    ) -> Result<(String, Vec<BasisValue>), DomainError> {
        let q = rat(self, a)?;
        if x.point() != Some(&RealPoint::Rational(half())) {
            return Err(DomainError::NoWitness { domain: self.name(), detail: format!("limit {x}") });
        }
        let h = half();
        // Cofinal chains 1/2 ± 2^{-(j+1)}, read towards 1/2.
        let step = |j: usize| Rational::new(BigInt::one(), BigInt::one() << (j + 1));
        let (desc, members) = if q <= &h {
            let m = (0..count).map(|j| BasisValue::Rat(&h + step(j))).collect();
            ("D0 = Q ∩ (1/2, 1], along 1/2 + 2^-(j+1)", m)
        } else {
            let m = (0..count).map(|j| BasisValue::Rat(&h - step(j))).collect();
            ("D1 = Q ∩ [0, 1/2), along 1/2 - 2^-(j+1)", m)
        };
        Ok((String::from(desc), members))
    }
}

/// The Q-domain: `[0, ∞] ∪ ℤ⁻` where the nonnegative integers form a chain,
/// `ℤ⁻` is read downwards (`−1 ⪯ −2 ⪯ …`), each block `(n, n+1]` carries `≤`,
/// and `∞` is the top. The weak basis is the rationals in `[0, ∞) ∪ ℤ⁻`
/// without the positive integers.
///
/// Codes: 0 ↦ 0; `2k + 1` ↦ `−(k + 1)`; `2k` (k ≥ 1) ↦ `w + f` where
/// `(w, i) = unpair(k − 1)` and `f` is the fraction with index `i + 1`.
/// There is no bottom element: `0` and `−1` have no common lower bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct QDomain;

impl QDomain {
    fn below(x: &Rational, y: &Rational) -> bool {
        if x == y {
            return true;
        }
        match (x.is_negative(), y.is_negative()) {
            (true, true) => y < x,
            (false, false) => {
                let y_int_above = y.is_integer() && y >= &x.ceil();
                let same_block = x.is_positive() && x.ceil() == y.ceil() && x <= y;
                y_int_above || same_block
            }
            _ => false,
        }
    }
}

impl EffectiveDomain for QDomain {
    fn name(&self) -> String {
        String::from("qDomain")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        if code.is_zero() {
            return Ok(BasisValue::Rat(Rational::zero()));
        }
        let k: Nat = code >> 1usize;
        if code.bit(0) {
            let v = BigInt::from(k + 1u32);
            return Ok(BasisValue::Rat(Rational::from_integer(-v)));
        }
        let (w, i) = unpair(&(k - 1u32));
        let f = decode_fraction(&(i + 1u32))?;
        Ok(BasisValue::Rat(Rational::from_integer(BigInt::from(w)) + f))
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        let q = rat(self, value)?;
        if q.is_zero() {
            return Ok(Nat::zero());
        }
        if q.is_negative() {
            if !q.is_integer() {
                return Err(self.wrong(value));
            }
            let k = (-q.to_integer()).magnitude() - 1u32;
            return Ok((k << 1usize) + 1u32);
        }
        if q.is_integer() {
            return Err(self.wrong(value));
        }
        let w = q.floor();
        let i = encode_fraction(&(q - &w))? - 1u32;
        let k = pair(w.to_integer().magnitude(), &i) + 1u32;
        Ok(k << 1usize)
    }

    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        UnitInterval.parse_value(text)
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        Ok(Self::below(rat(self, a)?, rat(self, b)?))
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        rat(self, a)?;
        match x.limit {
            Limit::Top => Ok(true),
            _ => Err(self.unsupported(x)),
        }
    }

    fn witness_family(
        &self,
        a: &BasisValue,
        x: &LimitDescriptor,
        count: usize,
    ) -> Result<(String, Vec<BasisValue>), DomainError> {
        let q = rat(self, a)?;
        if x.limit != Limit::Top || q.is_negative() {
            return Err(DomainError::NoWitness { domain: self.name(), detail: format!("{a} against {x}") });
        }
        let members = (1..=count as i64)
            .map(|j| BasisValue::Rat(Rational::from_integer(BigInt::from(-j))))
            .collect();
        Ok((String::from("Z- chain -1, -2, -3, ..."), members))
    }
}

/// Countably many copies `I_n = ℕ` under `≤`, pairwise incomparable, below a
/// common top `p`. Code `⟨n, k⟩` is the element `k` of `I_n`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Fan;

impl EffectiveDomain for Fan {
    fn name(&self) -> String {
        String::from("fan")
    }

    fn decode(&self, code: &Nat) -> Result<BasisValue, DomainError> {
        let (branch, k) = unpair(code);
        Ok(BasisValue::Fan { branch, k })
    }

    fn encode(&self, value: &BasisValue) -> Result<Nat, DomainError> {
        match value {
            BasisValue::Fan { branch, k } => Ok(pair(branch, k)),
            v => Err(self.wrong(v)),
        }
    }

    /// `n:k`.
    fn parse_value(&self, text: &str) -> Result<BasisValue, DomainError> {
        let bad = || DomainError::WrongCarrier { domain: self.name(), value: text.to_string() };
        let (n, k) = text.trim().split_once(':').ok_or_else(bad)?;
        let branch = n.trim().parse().map_err(|_| bad())?;
        let k = k.trim().parse().map_err(|_| bad())?;
        Ok(BasisValue::Fan { branch, k })
    }

    fn leq_values(&self, a: &BasisValue, b: &BasisValue) -> Result<bool, DomainError> {
        match (a, b) {
            (BasisValue::Fan { branch: n, k }, BasisValue::Fan { branch: m, k: j }) => Ok(n == m && k <= j),
            (BasisValue::Fan { .. }, v) | (v, _) => Err(self.wrong(v)),
        }
    }

    fn leq_to_limit(&self, a: &BasisValue, x: &LimitDescriptor) -> Result<bool, DomainError> {
        match (a, &x.limit) {
            (BasisValue::Fan { .. }, Limit::Top) => Ok(true),
            (BasisValue::Fan { .. }, _) => Err(self.unsupported(x)),
            (v, _) => Err(self.wrong(v)),
        }
    }

    fn witness_family(
        &self,
        a: &BasisValue,
        x: &LimitDescriptor,
        count: usize,
    ) -> Result<(String, Vec<BasisValue>), DomainError> {
        let BasisValue::Fan { branch, .. } = a else {
            return Err(self.wrong(a));
        };
        if x.limit != Limit::Top {
            return Err(self.unsupported(x));
        }
        let other = branch + 1u32;
        let members = (0..count as u64)
            .map(|j| BasisValue::Fan { branch: other.clone(), k: Nat::from(j) })
            .collect();
        Ok((format!("I_{other} (a branch other than I_{branch})"), members))
    }
}
