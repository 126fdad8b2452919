//! Sampled and bounded checks on effective domains.

use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{way_below_graph, BasisValue, DomainError, DomainRef, LimitDescriptor};
use crate::codes::{pair_u64, unpair};
use crate::Nat;

/// Outcome of cross-checking a way-below graph against the rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisReport {
    pub domain: String,
    pub window: u64,
    /// Pairs `(n, m)`, `n, m < window`, for which the rule holds.
    pub true_pairs: u64,
    /// Distinct in-window pairs emitted by the graph.
    pub emitted_pairs: u64,
    /// Rule holds but the graph did not emit the pair within the scan.
    pub missing: Vec<(u64, u64)>,
    /// Emitted but the rule fails.
    pub spurious: Vec<(u64, u64)>,
    pub scanned: u64,
}

impl BasisReport {
    pub fn mismatches(&self) -> usize {
        self.missing.len() + self.spurious.len()
    }
}

/// Scans the way-below graph at indices `0 ..= ⟨N−1, N−1⟩` and compares its
/// range inside the window `{⟨n, m⟩ : n, m < N}` with the rule itself.
pub fn check_effective_basis(d: &DomainRef, window: u64, fuel: u64) -> Result<BasisReport, DomainError> {
    let graph = way_below_graph(d)?;
    let w = window as usize;
    let mut emitted = alloc::vec![false; w * w];
    let scanned = if window == 0 { 0 } else { pair_u64(window - 1, window - 1) as u64 + 1 };
    let mut spurious = Vec::new();
    for k in 0..scanned {
        let v = graph.evaluate_u64(k, fuel)?.value;
        let (n, m) = unpair(&v);
        let (Some(n), Some(m)) = (n.to_u64(), m.to_u64()) else { continue };
        if n >= window || m >= window || emitted[n as usize * w + m as usize] {
            continue;
        }
        emitted[n as usize * w + m as usize] = true;
        if !d.way_below(&Nat::from(n), &Nat::from(m))? {
            spurious.push((n, m));
        }
    }
    let values = decode_window(d, window)?;
    let mut true_pairs = 0;
    let mut missing = Vec::new();
    for n in 0..window {
        for m in 0..window {
            if d.way_below_values(&values[n as usize], &values[m as usize])? {
                true_pairs += 1;
                if !emitted[n as usize * w + m as usize] {
                    missing.push((n, m));
                }
            }
        }
    }
    Ok(BasisReport {
        domain: d.name(),
        window,
        true_pairs,
        emitted_pairs: emitted.iter().filter(|&&e| e).count() as u64,
        missing,
        spurious,
        scanned,
    })
}

fn decode_window(d: &DomainRef, window: u64) -> Result<Vec<BasisValue>, DomainError> {
    (0..window).map(|c| d.decode(&Nat::from(c))).collect()
}

/// A failed order or way-below law on concrete codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    Reflexivity(u64),
    Antisymmetry(u64, u64),
    Transitivity(u64, u64, u64),
    WayBelowNotBelow(u64, u64),
    WayBelowNotStable(u64, u64, u64),
    BottomNotWayBelow(u64),
}

/// Checks the partial-order laws on codes `< window` and, when the domain
/// has a way-below relation, `a ≪ b ⇒ a ⪯ b`, `a ⪯ b ≪ c ⇒ a ≪ c` and
/// `0 ≪ b`.
pub fn check_order_axioms(d: &DomainRef, window: u64) -> Result<Option<AxiomViolation>, DomainError> {
    let vals = decode_window(d, window)?;
    let n = vals.len();
    let mut leq = alloc::vec![false; n * n];
    let mut wb = alloc::vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = d.leq_values(&vals[a], &vals[b])?;
            if d.has_way_below() {
                wb[a * n + b] = d.way_below_values(&vals[a], &vals[b])?;
            }
        }
    }
    let u = |i: usize| i as u64;
    for a in 0..n {
        if !leq[a * n + a] {
            return Ok(Some(AxiomViolation::Reflexivity(u(a))));
        }
        for b in 0..n {
            if a != b && leq[a * n + b] && leq[b * n + a] {
                return Ok(Some(AxiomViolation::Antisymmetry(u(a), u(b))));
            }
            if d.has_way_below() && wb[a * n + b] && !leq[a * n + b] {
                return Ok(Some(AxiomViolation::WayBelowNotBelow(u(a), u(b))));
            }
            for c in 0..n {
                if leq[a * n + b] && leq[b * n + c] && !leq[a * n + c] {
                    return Ok(Some(AxiomViolation::Transitivity(u(a), u(b), u(c))));
                }
                if d.has_way_below() && leq[a * n + b] && wb[b * n + c] && !wb[a * n + c] {
                    return Ok(Some(AxiomViolation::WayBelowNotStable(u(a), u(b), u(c))));
                }
            }
        }
    }
    if d.has_way_below() {
        if let Some(b) = (0..n).find(|&b| !wb[b]) {
            return Ok(Some(AxiomViolation::BottomNotWayBelow(u(b))));
        }
    }
    Ok(None)
}

/// Scans codes `< window` for `x, y ⪯ z` with `x, y` incomparable.
pub fn check_conditionally_connected(
    d: &DomainRef,
    window: u64,
) -> Result<Option<(BasisValue, BasisValue, BasisValue)>, DomainError> {
    let vals = decode_window(d, window)?;
    let n = vals.len();
    let mut leq = alloc::vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            leq[a * n + b] = d.leq_values(&vals[a], &vals[b])?;
        }
    }
    for z in 0..n {
        let below: Vec<usize> = (0..n).filter(|&x| leq[x * n + z]).collect();
        for (i, &x) in below.iter().enumerate() {
            for &y in &below[i + 1..] {
                if !leq[x * n + y] && !leq[y * n + x] {
                    return Ok(Some((vals[x].clone(), vals[y].clone(), vals[z].clone())));
                }
            }
        }
    }
    Ok(None)
}

/// Results of replaying a directed-family witness on its first members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessCheck {
    /// Every member lies below the limit.
    pub below_limit: bool,
    /// No member lies above `a`.
    pub avoids: bool,
    /// Every two members have an upper bound among the members.
    pub directed: bool,
    /// Every member but the last has a strictly larger later member.
    pub unbounded: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.below_limit && self.avoids && self.directed && self.unbounded
    }
}

/// A directed family showing `¬(a ≪ x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    pub members: Vec<BasisValue>,
    pub check: WitnessCheck,
}

/// Builds the domain's directed family against `a ≪ limit` and verifies its
/// first `count` members. The supremum claim itself is symbolic.
pub fn not_way_below_witness(
    d: &DomainRef,
    a: &Nat,
    limit: &LimitDescriptor,
    count: usize,
) -> Result<Witness, DomainError> {
    let av = d.decode(a)?;
    let (description, members) = d.witness_family(&av, limit, count)?;
    let mut below_limit = true;
    let mut avoids = true;
    for m in &members {
        below_limit &= d.leq_to_limit(m, limit)?;
        avoids &= !d.leq_values(&av, m)?;
    }
    let k = members.len();
    let mut leq = alloc::vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = d.leq_values(&members[i], &members[j])?;
        }
    }
    let directed = (0..k).all(|i| (0..k).all(|j| (0..k).any(|c| leq[i * k + c] && leq[j * k + c])));
    let unbounded = (0..k.saturating_sub(1)).all(|i| (i + 1..k).any(|j| leq[i * k + j] && !leq[j * k + i]));
    Ok(Witness { description, members, check: WitnessCheck { below_limit, avoids, directed, unbounded } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::builtin;
    use crate::machine::DEFAULT_FUEL;
    use crate::Rational;
    use num_bigint::BigInt;

    #[test]
    fn cantor_window_of_four() {
        let d = builtin("cantor").unwrap();
        let r = check_effective_basis(&d, 4, DEFAULT_FUEL).unwrap();
        assert_eq!(r.true_pairs, 8);
        assert_eq!(r.emitted_pairs, 8);
        assert_eq!(r.mismatches(), 0);
    }

    #[test]
    fn basis_checks_pass() {
        for name in ["cantor", "unitInterval", "interval(0,1)"] {
            let d = builtin(name).unwrap();
            assert_eq!(check_effective_basis(&d, 64, DEFAULT_FUEL).unwrap().mismatches(), 0, "{name}");
            assert_eq!(check_order_axioms(&d, 40).unwrap(), None, "{name}");
        }
    }

    #[test]
    fn weak_domains_satisfy_order_laws() {
        for name in ["flippedUnit", "qDomain", "fan", "turing"] {
            let d = builtin(name).unwrap();
            assert_eq!(check_order_axioms(&d, 60).unwrap(), None, "{name}");
            assert!(check_effective_basis(&d, 4, DEFAULT_FUEL).is_err());
        }
    }

    #[test]
    fn connectedness_gate() {
        let c = builtin("cantor").unwrap();
        assert_eq!(check_conditionally_connected(&c, 64).unwrap(), None);
        let i = builtin("interval(0,1)").unwrap();
        let (x, y, z) = check_conditionally_connected(&i, 64).unwrap().unwrap();
        assert!(i.leq_values(&x, &z).unwrap() && i.leq_values(&y, &z).unwrap());
        assert!(!i.leq_values(&x, &y).unwrap() && !i.leq_values(&y, &x).unwrap());
    }

    #[test]
    fn witnesses() {
        let half = LimitDescriptor::rational(Rational::new(BigInt::from(1), BigInt::from(2)));
        let f = builtin("flippedUnit").unwrap();
        for a in ["1/4", "3/4", "0", "1", "1/2"] {
            let code = f.encode(&f.parse_value(a).unwrap()).unwrap();
            let w = not_way_below_witness(&f, &code, &half, 100).unwrap();
            assert!(w.check.passed(), "{a}: {:?}", w.check);
        }
        let q = builtin("qDomain").unwrap();
        let inf = LimitDescriptor::top("infinity");
        for c in [0u32, 2, 4, 10] {
            assert!(not_way_below_witness(&q, &Nat::from(c), &inf, 100).unwrap().check.passed());
        }
        assert!(not_way_below_witness(&q, &Nat::from(1u32), &inf, 100).is_err());
        let fan = builtin("fan").unwrap();
        let p = LimitDescriptor::top("p");
        let w = not_way_below_witness(&fan, &Nat::from(17u32), &p, 100).unwrap();
        assert!(w.check.passed());
        assert!(w.description.starts_with("I_3"));
    }
}
