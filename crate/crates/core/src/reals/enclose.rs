use num_bigint::BigInt;
use num_traits::One;

use super::RealError;
use crate::codes::RatInterval;
use crate::domains::BasisValue;
use crate::elements::ComputableElement;
use crate::{Nat, Rational};

/// The partial map `ρ` from an interval domain onto its ambient: a
/// degenerate interval `[x, x]` represents `x`, and every other interval is
/// outside its domain of definition.
pub fn represent(iv: &RatInterval) -> Option<Rational> {
    iv.is_degenerate().then(|| iv.lo().clone())
}

fn interval_at(e: &ComputableElement, i: u64, fuel: u64) -> Result<RatInterval, RealError> {
    let code = e.stream().evaluate(&Nat::from(i), fuel)?.value;
    match e.domain().decode(&code)? {
        BasisValue::Interval(iv) => Ok(iv),
        v => Err(RealError::NotInterval(alloc::format!("{v}"))),
    }
}

/// The first emission of `e` with width `≤ 2^{-n}`, found by galloping
/// over emission indices below `budget` and then bisecting back.
///
/// Emissions are assumed to shrink; every probed pair is checked for
/// nesting and a violation is reported.
pub fn enclose(e: &ComputableElement, n: u32, budget: u64, fuel: u64) -> Result<RatInterval, RealError> {
    let eps = Rational::new(BigInt::one(), BigInt::one() << n);
    let first = interval_at(e, 0, fuel)?;
    if first.width() <= eps {
        return Ok(first);
    }
    let (mut bad, mut bad_iv) = (0u64, first);
    let mut probe = 1u64;
    let (mut good, mut good_iv) = loop {
        let iv = interval_at(e, probe, fuel)?;
        if !iv.is_subset_of(&bad_iv) {
            return Err(RealError::NotShrinking { index: probe });
        }
        if iv.width() <= eps {
            break (probe, iv);
        }
        if probe >= budget {
            return Err(RealError::Budget { best: iv, index: probe });
        }
        bad = probe;
        bad_iv = iv;
        probe = probe.saturating_mul(2).min(budget);
    };
    while good - bad > 1 {
        let mid = bad + (good - bad) / 2;
        let iv = interval_at(e, mid, fuel)?;
        if !good_iv.is_subset_of(&iv) || !iv.is_subset_of(&bad_iv) {
            return Err(RealError::NotShrinking { index: mid });
        }
        if iv.width() <= eps {
            good = mid;
            good_iv = iv;
        } else {
            bad = mid;
            bad_iv = iv;
        }
    }
    Ok(good_iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::Ambient;
    use crate::domains::{builtin, IntervalDomain};
    use crate::machine::DEFAULT_FUEL;
    use crate::reals::{bisection_element, pi_element, RationalPoly};
    use alloc::sync::Arc;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn bisection_width_is_exact() {
        let p = RationalPoly::from_integers(&[-2, 0, 1]);
        let e = bisection_element(&p, &q(1, 1), &q(2, 1)).unwrap();
        let iv = enclose(&e, 20, 64, DEFAULT_FUEL).unwrap();
        assert_eq!(iv.width(), Rational::new(BigInt::one(), BigInt::one() << 20));
        let two = q(2, 1);
        assert!(iv.lo() * iv.lo() <= two && two <= iv.hi() * iv.hi());
    }

    #[test]
    fn degenerate_stream() {
        let d = Arc::new(IntervalDomain::new(Ambient::new(q(0, 1), q(2, 1)).unwrap()));
        let one = d.clone();
        let code = crate::domains::EffectiveDomain::encode(&*one, &BasisValue::Interval(RatInterval::point(q(1, 1)))).unwrap();
        let e = ComputableElement::from_codes("one", d, [code], None);
        for n in [0, 5, 40] {
            assert_eq!(enclose(&e, n, 10, DEFAULT_FUEL).unwrap(), RatInterval::point(q(1, 1)));
        }
        assert_eq!(represent(&RatInterval::point(q(1, 1))), Some(q(1, 1)));
        assert_eq!(represent(&RatInterval::new(q(0, 1), q(1, 1)).unwrap()), None);
    }

    #[test]
    fn pi_to_four_bits() {
        let iv = enclose(&pi_element(), 4, 1 << 12, DEFAULT_FUEL).unwrap();
        assert!(iv.width() <= q(1, 16));
        assert!(iv.contains(&q(31416, 10000)));
    }

    #[test]
    fn budget_reports_best() {
        let p = RationalPoly::from_integers(&[-2, 0, 1]);
        let e = bisection_element(&p, &q(1, 1), &q(2, 1)).unwrap();
        assert!(matches!(enclose(&e, 20, 8, DEFAULT_FUEL), Err(RealError::Budget { index: 8, .. })));
    }

    #[test]
    fn non_interval_domain() {
        let e = ComputableElement::from_codes("s", builtin("cantor").unwrap(), [0u32], None);
        assert!(matches!(enclose(&e, 3, 4, DEFAULT_FUEL), Err(RealError::NotInterval(_))));
    }
}
