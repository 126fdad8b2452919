use std::collections::BTreeSet;
use std::sync::Arc;

use effdom::codes::{
    decode_fraction, decode_interval, decode_string, encode_fraction, encode_interval, encode_string, pair,
    triple, unpair, Ambient, RatInterval,
};
use effdom::domains::{
    builtin, conditionally_connected, scott_opens, upper_sets, way_below_matrix, BasisValue, CodePermutation,
    DomainRef, FinitePoset, IntervalDomain,
};
use effdom::elements::{recode_element, ComputableElement};
use effdom::machine::{dovetail_merge2, dovetail_merge3, recode, Enumerator, Expr, DEFAULT_FUEL};
use effdom::reals::{bisection_trace, pi_enclosure, RationalPoly};
use effdom::{Nat, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..20).prop_map(|(a, b)| q(a, b))
}

fn poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|size| {
        proptest::collection::vec(any::<bool>(), size * size).prop_map(move |bits| {
            let covers: Vec<(usize, usize)> = (0..size)
                .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
                .filter(|&(i, j)| bits[i * size + j])
                .collect();
            FinitePoset::from_covers("random", size, &covers).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, ..ProptestConfig::default() })]

    #[test]
    fn pairing_inverts(a in 0u64..u64::MAX, b in 0u64..u64::MAX) {
        prop_assert_eq!(unpair(&pair(&n(a), &n(b))), (n(a), n(b)));
    }

    #[test]
    fn unpair_then_pair(k in any::<u64>()) {
        let (a, b) = unpair(&n(k));
        prop_assert_eq!(pair(&a, &b), n(k));
    }

    #[test]
    fn fraction_roundtrip(k in 0u64..(1 << 40)) {
        let v = decode_fraction(&n(k)).unwrap();
        prop_assert_eq!(encode_fraction(&v).unwrap(), n(k));
    }

    #[test]
    fn string_roundtrip(k in any::<u64>()) {
        prop_assert_eq!(encode_string(&decode_string(&n(k))), n(k));
    }

    #[test]
    fn interval_roundtrip(k in 0u64..(1 << 30), a in -5i64..5, w in 1i64..7) {
        let amb = Ambient::new(q(a, 1), q(a + w, 1)).unwrap();
        let iv = decode_interval(&n(k), &amb).unwrap();
        prop_assert!(iv.is_subset_of(amb.interval()));
        prop_assert_eq!(encode_interval(&iv, &amb).unwrap(), n(k));
    }

    #[test]
    fn finite_way_below_is_leq(p in poset(8)) {
        let wb = way_below_matrix(&p).unwrap();
        for a in 0..p.size() {
            for b in 0..p.size() {
                prop_assert_eq!(wb[a][b], p.leq(a, b));
            }
        }
    }

    #[test]
    fn scott_opens_are_upper_sets(p in poset(5)) {
        prop_assert_eq!(scott_opens(&p).unwrap(), upper_sets(&p).unwrap());
    }

    #[test]
    fn connectedness_witnesses_are_real(p in poset(7)) {
        if let Some((x, y, z)) = conditionally_connected(&p) {
            prop_assert!(p.leq(x, z) && p.leq(y, z));
            prop_assert!(!p.leq(x, y) && !p.leq(y, x));
        }
    }

    #[test]
    fn merge2_matches_join(
        g in proptest::collection::vec(0u64..6, 1..5),
        h in proptest::collection::vec((0u64..6, 0u64..6), 1..5),
    ) {
        let ge = Enumerator::table(g.clone());
        let he = Enumerator::table(h.iter().map(|&(a, b)| pair(&n(a), &n(b))));
        let side = g.len().max(h.len()) as u64;
        let out: BTreeSet<Nat> = dovetail_merge2(&ge, &he).take(side * side + 1, DEFAULT_FUEL).unwrap().into_iter().collect();
        let mut want = BTreeSet::from([n(0)]);
        for &(a, b) in &h {
            if g.contains(&b) {
                want.insert(n(a));
            }
        }
        prop_assert_eq!(out, want);
    }

    #[test]
    fn merge3_matches_join(
        g in proptest::collection::vec((0u64..4, 0u64..4), 1..4),
        h in proptest::collection::vec((0u64..4, 0u64..4), 1..4),
        j in proptest::collection::vec((0u64..4, 0u64..4), 1..4),
    ) {
        let t = |v: &Vec<(u64, u64)>| Enumerator::table(v.iter().map(|&(a, b)| pair(&n(a), &n(b))));
        let m = dovetail_merge3(&t(&g), &t(&h), &t(&j));
        let top = triple(&n(g.len() as u64), &n(h.len() as u64), &n(j.len() as u64));
        let out: BTreeSet<Nat> = m.take(u64::try_from(top).unwrap() + 2, DEFAULT_FUEL).unwrap().into_iter().collect();
        let mut want = BTreeSet::from([n(0)]);
        for &(g1, g2) in &g {
            for &(h1, h2) in &h {
                for &(j1, j2) in &j {
                    if g2 == h1 && h2 == j1 {
                        want.insert(pair(&n(g1), &n(j2)));
                    }
                }
            }
        }
        prop_assert_eq!(out, want);
    }

    #[test]
    fn recode_identity_is_identity(vals in proptest::collection::vec(0u64..1000, 1..8)) {
        let e = Enumerator::table(vals.clone());
        let r = recode(&e, &Enumerator::identity());
        prop_assert_eq!(r.take(20, DEFAULT_FUEL).unwrap(), e.take(20, DEFAULT_FUEL).unwrap());
    }

    #[test]
    fn wrapping_costs_steps(src in expr_source(), x in 0u64..50) {
        let e: Expr = src.parse().unwrap();
        let wrapped: Expr = format!("(+ {src} 0)").parse().unwrap();
        let a = Enumerator::program(e).evaluate_u64(x, DEFAULT_FUEL);
        let b = Enumerator::program(wrapped).evaluate_u64(x, DEFAULT_FUEL);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(b.steps > a.steps);
            prop_assert_eq!(a.value, b.value);
        }
    }

    #[test]
    fn expr_display_roundtrip(src in expr_source()) {
        let e: Expr = src.parse().unwrap();
        let again: Expr = e.to_string().parse().unwrap();
        prop_assert_eq!(again.to_string(), e.to_string());
    }

    #[test]
    fn interval_way_below_matches_chain_oracle(
        u in 0i64..=12, v in 0i64..=12, x in 0i64..=12, y in 0i64..=12,
    ) {
        prop_assume!(u <= v && x <= y);
        let amb = Ambient::new(q(0, 1), q(1, 1)).unwrap();
        let d = IntervalDomain::new(amb);
        let a = RatInterval::new(q(u, 12), q(v, 12)).unwrap();
        let b = RatInterval::new(q(x, 12), q(y, 12)).unwrap();
        // Halving chain D_k = [x − x/2^k, y + (1 − y)/2^k] with sup b.
        let hit = (0..40u32).any(|k| {
            let s = q(1, 1 << k);
            let lo = b.lo() - b.lo() * &s;
            let hi = b.hi() + (q(1, 1) - b.hi()) * &s;
            RatInterval::new(lo, hi).unwrap().is_subset_of(&a)
        });
        prop_assert_eq!(d.way_below_intervals(&a, &b), hit);
    }

    #[test]
    fn bisection_invariants(r_num in 1i64..99, den in 2i64..100) {
        prop_assume!(r_num < den);
        // p(x) = den·x − r_num has its zero inside (0, 1).
        let p = RationalPoly::from_integers(&[-r_num, den]);
        let t = bisection_trace(&p, &q(0, 1), &q(1, 1), 24).unwrap();
        for w in t.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            prop_assert!(b.is_subset_of(a));
            let prod = p.eval(a.lo()) * p.eval(a.hi());
            prop_assert!(prod <= q(0, 1));
            prop_assert!(b.width() * q(2, 1) == a.width() || b.is_degenerate());
        }
    }

    #[test]
    fn pi_nested(k in 0u64..400) {
        let mut meter = effdom::machine::Meter::new(u64::MAX);
        let a = pi_enclosure(k, &mut meter).unwrap();
        let b = pi_enclosure(k + 1, &mut meter).unwrap();
        prop_assert!(b.is_subset_of(&a));
    }

    #[test]
    fn recode_preserves_decoded_sets(perm in Just((0u64..24).collect::<Vec<_>>()).prop_shuffle(),
                                     codes in proptest::collection::vec(0u64..24, 1..10)) {
        let d = builtin("cantor").unwrap();
        let e = ComputableElement::from_codes("e", d, codes.clone(), None);
        let p = CodePermutation::window(perm).unwrap();
        let r = recode_element(&e, &p, 64).unwrap();
        let set = |x: &ComputableElement| -> BTreeSet<String> {
            x.decoded(codes.len(), DEFAULT_FUEL).unwrap().iter().map(|v| v.to_string()).collect()
        };
        prop_assert_eq!(set(&r), set(&e));
    }

    #[test]
    fn domain_orders_are_partial(name in prop::sample::select(vec!["cantor", "unitInterval", "interval", "qDomain", "flippedUnit", "fan"]),
                                 a in 0u64..300, b in 0u64..300, c in 0u64..300) {
        let d: DomainRef = builtin(name).unwrap();
        let (a, b, c) = (n(a), n(b), n(c));
        prop_assert!(d.leq(&a, &a).unwrap());
        if d.leq(&a, &b).unwrap() && d.leq(&b, &a).unwrap() {
            prop_assert_eq!(d.decode(&a).unwrap(), d.decode(&b).unwrap());
        }
        if d.leq(&a, &b).unwrap() && d.leq(&b, &c).unwrap() {
            prop_assert!(d.leq(&a, &c).unwrap());
        }
        if d.has_way_below() && d.way_below(&a, &b).unwrap() {
            prop_assert!(d.leq(&a, &b).unwrap());
        }
    }

    #[test]
    fn cantor_way_below_is_prefix(a in 0u64..1024, b in 0u64..1024) {
        let d = builtin("cantor").unwrap();
        prop_assert_eq!(d.way_below(&n(a), &n(b)).unwrap(), d.leq(&n(a), &n(b)).unwrap());
    }

    #[test]
    fn poly_text_roundtrip(coeffs in proptest::collection::vec(small_rational(), 1..5)) {
        let p = RationalPoly::new(coeffs);
        let again: RationalPoly = p.to_string().parse().unwrap();
        prop_assert_eq!(again, p);
    }
}

fn expr_source() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![Just("n".to_string()), (0u64..20).prop_map(|c| c.to_string())];
    leaf.prop_recursive(4, 24, 3, |inner| {
        let op = prop::sample::select(vec!["+", "-", "*", "/", "%", "min", "max", "<", "=", "pair", "gcd"]);
        let un = prop::sample::select(vec!["fst", "snd", "isqrt", "log2"]);
        prop_oneof![
            (op, inner.clone(), inner.clone()).prop_map(|(o, a, b)| format!("({o} {a} {b})")),
            (un, inner.clone()).prop_map(|(o, a)| format!("({o} {a})")),
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(c, a, b)| format!("(if {c} {a} {b})")),
            (inner.clone(), inner).prop_map(|(c, b)| format!("(fold (% {c} 5) 0 (+ $1 {b}))")),
        ]
    })
}

#[test]
fn interval_domain_value_shapes() {
    let d: DomainRef = Arc::new(IntervalDomain::new(Ambient::unit()));
    assert!(matches!(d.decode(&n(0)).unwrap(), BasisValue::Interval(_)));
}
