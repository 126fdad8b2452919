//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use effdom::codes::{
    decode_fraction, decode_interval, decode_string, encode_fraction, encode_interval, encode_string, pair,
    triple, unpair, Ambient,
};
use effdom::complexity::{
    builtin_measurement, check_monotone, check_strict_monotone, element_complexity_audit, generic_measurement,
    phi0_program, polytime_check, t0_bound, PolyFit, Precision,
};
use effdom::domains::{
    builtin, check_conditionally_connected, check_effective_basis, not_way_below_witness, scott_opens,
    upper_sets, way_below_matrix, BasisValue, CodePermutation, DomainRef, FinitePoset, LimitDescriptor,
    TriadicUnit,
};
use effdom::elements::{
    apply_function, bridge_graph, change_basis, recode_element, ComputableElement, ComputableFunction,
};
use effdom::machine::{
    dovetail_merge2, dovetail_merge3, fairness_audit, Enumerator, Fairness, ShellSchedule, DEFAULT_FUEL,
};
use effdom::reals::{bisection_element, enclose, machin_bounds, machin_terms_for, pi_element, RationalPoly};
use effdom::{Nat, Rational};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn q(a: i64, b: i64) -> Rational {
    Rational::new(BigInt::from(a), BigInt::from(b))
}

fn dyadic(k: u64) -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << k)
}

fn pairing() -> Outcome {
    let mut seen = HashSet::with_capacity(1_000_000);
    for a in 0..1000u64 {
        for b in 0..1000u64 {
            let k = pair(&n(a), &n(b));
            ensure(unpair(&k) == (n(a), n(b)), || format!("unpair(pair({a}, {b})) ≠ ({a}, {b})"))?;
            ensure(seen.insert(k), || format!("pair({a}, {b}) collides"))?;
        }
    }
    Ok(format!("{} distinct codes", seen.len()))
}

fn finite_maps() -> Outcome {
    const COUNT: u64 = 1 << 15;
    let amb = Ambient::new(q(-1, 1), q(2, 1)).unwrap();
    let (mut fracs, mut words, mut ivs) = (HashSet::new(), HashSet::new(), HashSet::new());
    let mut prev_key = None;
    for i in 0..COUNT {
        let f = decode_fraction(&n(i)).map_err(|e| e.to_string())?;
        ensure(encode_fraction(&f).ok() == Some(n(i)), || format!("fraction index {i}"))?;
        ensure(f.numer().gcd_check(f.denom()), || format!("index {i} decodes to unreduced {f}"))?;
        ensure(fracs.insert(f), || format!("fraction index {i} repeats"))?;

        let s = decode_string(&n(i));
        ensure(encode_string(&s) == n(i), || format!("string index {i}"))?;
        let key = (s.len(), s.value());
        ensure(prev_key.as_ref().is_none_or(|p| p < &key), || format!("string order broken at {i}"))?;
        prev_key = Some(key);
        ensure(words.insert(s), || format!("string index {i} repeats"))?;

        let iv = decode_interval(&n(i), &amb).map_err(|e| e.to_string())?;
        ensure(encode_interval(&iv, &amb).ok() == Some(n(i)), || format!("interval index {i}"))?;
        ensure(ivs.insert(iv), || format!("interval index {i} repeats"))?;
    }
    Ok(format!("3 maps x {COUNT} indices"))
}

trait GcdCheck {
    fn gcd_check(&self, other: &Self) -> bool;
}

impl GcdCheck for BigInt {
    fn gcd_check(&self, other: &Self) -> bool {
        num_integer::Integer::gcd(self, other).is_one()
    }
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> FinitePoset {
    let size = rng.gen_range(1..=max);
    let density = rng.gen_range(0.1..0.7);
    let covers: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| (i + 1..size).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(density))
        .collect();
    let mut perm: Vec<usize> = (0..size).collect();
    perm.shuffle(rng);
    let covers: Vec<_> = covers.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    FinitePoset::from_covers("random", size, &covers).unwrap()
}

fn way_below_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checked = 0;
    for i in 0..200 {
        let p = random_poset(&mut rng, 8);
        let wb = way_below_matrix(&p).map_err(|e| e.to_string())?;
        for a in 0..p.size() {
            for b in 0..p.size() {
                ensure(wb[a][b] == p.leq(a, b), || format!("poset {i}: ({a}, {b})"))?;
            }
        }
        if p.size() <= 5 {
            let so = scott_opens(&p).map_err(|e| e.to_string())?;
            ensure(so == upper_sets(&p).map_err(|e| e.to_string())?, || format!("poset {i}: Scott opens"))?;
            checked += 1;
        }
    }
    Ok(format!("200 posets, {checked} with Scott opens compared"))
}

fn effective_basis() -> Outcome {
    let mut parts = Vec::new();
    for name in ["cantor", "interval(0,1)", "unitInterval"] {
        let d = builtin(name).unwrap();
        let r = check_effective_basis(&d, 128, DEFAULT_FUEL).map_err(|e| e.to_string())?;
        ensure(r.mismatches() == 0, || format!("{name}: {} mismatches", r.mismatches()))?;
        parts.push(format!("{name}: {} pairs", r.true_pairs));
    }
    Ok(parts.join(", "))
}

fn dovetail() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..500 {
        let len = |rng: &mut ChaCha8Rng| rng.gen_range(1..6usize);
        let pairs = |rng: &mut ChaCha8Rng, k: usize| -> Vec<(u64, u64)> {
            (0..k).map(|_| (rng.gen_range(0..6), rng.gen_range(0..6))).collect()
        };
        let table = |v: &[(u64, u64)]| Enumerator::table(v.iter().map(|&(a, b)| pair(&n(a), &n(b))));
        if i % 2 == 0 {
            let g: Vec<u64> = (0..len(&mut rng)).map(|_| rng.gen_range(0..6)).collect();
            let k = len(&mut rng);
            let h = pairs(&mut rng, k);
            let side = g.len().max(h.len()) as u64;
            let m = dovetail_merge2(&Enumerator::table(g.clone()), &table(&h));
            let got: BTreeSet<Nat> = m.take(side * side + 1, DEFAULT_FUEL).map_err(|e| e.to_string())?.into_iter().collect();
            let mut want = BTreeSet::from([n(0)]);
            want.extend(h.iter().filter(|(_, b)| g.contains(b)).map(|&(a, _)| n(a)));
            ensure(got == want, || format!("merge2 instance {i}"))?;
        } else {
            let (a, b, c) = (len(&mut rng), len(&mut rng), len(&mut rng));
            let (g, h, j) = (pairs(&mut rng, a), pairs(&mut rng, b), pairs(&mut rng, c));
            let m = dovetail_merge3(&table(&g), &table(&h), &table(&j));
            let top = triple(&n(a as u64), &n(b as u64), &n(c as u64)).to_u64().unwrap() + 2;
            let got: BTreeSet<Nat> = m.take(top, DEFAULT_FUEL).map_err(|e| e.to_string())?.into_iter().collect();
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
            ensure(got == want, || format!("merge3 instance {i}"))?;
        }
    }
    match fairness_audit(&ShellSchedule, 32, 4 * 32 * 32) {
        Fairness::Fair { steps } => Ok(format!("500 instances, 32x32 window covered in {steps} steps")),
        other => Err(format!("fairness: {other:?}")),
    }
}

fn bisection() -> Outcome {
    let p = RationalPoly::from_integers(&[-2, 0, 1]);
    let e = bisection_element(&p, &q(1, 1), &q(2, 1)).map_err(|e| e.to_string())?;
    let two = q(2, 1);
    for k in 0..=30u32 {
        let iv = enclose(&e, k, 64, DEFAULT_FUEL).map_err(|e| e.to_string())?;
        ensure(iv.width() == dyadic(k as u64), || format!("n = {k}: width {}", iv.width()))?;
        ensure(iv.lo() * iv.lo() <= two && two <= iv.hi() * iv.hi(), || format!("n = {k}: {iv} misses sqrt 2"))?;
    }
    Ok("n = 0..30".into())
}

/// π to 50 decimals.
const PI_50: &str = "314159265358979323846264338327950288419716939937510";

fn pi_reference() -> Result<Rational, String> {
    let num: BigInt = PI_50.parse().unwrap();
    let reference = Rational::new(num, BigInt::from(10).pow(50));
    // Independent check: Machin bounds narrower than 2^-180.
    let (lo, hi) = machin_bounds(machin_terms_for(180));
    let tol = Rational::new(BigInt::one(), BigInt::from(10).pow(50));
    ensure(&lo - &tol <= reference && reference <= &hi + &tol, || "reference disagrees with Machin".into())?;
    Ok(reference)
}

fn pi_element_check() -> Outcome {
    let reference = pi_reference()?;
    let pi = pi_element();
    let mut widest = Rational::zero();
    for k in 0..=12u32 {
        let iv = enclose(&pi, k, 1 << 14, DEFAULT_FUEL).map_err(|e| e.to_string())?;
        ensure(iv.contains(&reference), || format!("n = {k}: {iv} misses the 50-digit reference"))?;
        ensure(iv.width() <= dyadic(k as u64), || format!("n = {k}: width {}", iv.width()))?;
        widest = iv.width();
    }
    Ok(format!("n = 0..12, final width {:.3e}", widest.to_f64().unwrap_or(0.0)))
}

fn x_equals_one() -> Outcome {
    let mu = builtin_measurement("unitInterval").unwrap();
    let phi = Enumerator::program(phi0_program());
    let one = LimitDescriptor::rational(Rational::one());
    let t = t0_bound();
    let r = element_complexity_audit(&phi, &t, &mu, &one, 17, Precision::Dyadic, DEFAULT_FUEL)
        .map_err(|e| e.to_string())?;
    for row in &r.rows {
        ensure(row.gap == dyadic(row.n + 1), || format!("n = {}: gap {}", row.n, row.gap))?;
        ensure(row.steps_ok(), || format!("n = {}: {} steps over bound", row.n, row.steps))?;
    }
    ensure(r.passed(), || format!("audit failures {:?}", r.failures()))?;
    match polytime_check(&r.steps(), 4) {
        v @ PolyFit::NoFit { .. } => Ok(format!("n = 0..16, {v}")),
        v => Err(format!("unexpected fit: {v}")),
    }
}

fn closure_check(d: &DomainRef, emitted: &[Nat], limit: u64) -> Result<usize, String> {
    let e = ComputableElement::from_codes("e", d.clone(), emitted.to_vec(), None);
    let fx = apply_function(&ComputableFunction::identity(d.clone()), &e).map_err(|e| e.to_string())?;
    let top = emitted.iter().map(|m| pair(&n(limit), m)).max().unwrap().to_u64().unwrap() + emitted.len() as u64 + 2;
    let got: BTreeSet<Nat> = fx
        .stream()
        .take(top * top + 2 * top + 2, DEFAULT_FUEL)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|c| c < &n(limit))
        .collect();
    let mut want = BTreeSet::from([n(0)]);
    for k in 0..limit {
        if emitted.iter().any(|m| d.way_below(&n(k), m).unwrap()) {
            want.insert(n(k));
        }
    }
    ensure(got == want, || format!("{}: {got:?} vs {want:?}", d.name()))?;
    Ok(want.len())
}

fn function_application() -> Outcome {
    let c = closure_check(&builtin("cantor").unwrap(), &[n(1), n(4), n(10)], 24)?;
    let u = closure_check(&builtin("unitInterval").unwrap(), &[n(1), n(3), n(5)], 24)?;
    Ok(format!("cantor closure {c} codes, unitInterval closure {u} codes"))
}

fn model_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let d = builtin("cantor").unwrap();
    const W: u64 = 64;
    for i in 0..50 {
        let mut perm: Vec<u64> = (0..W).collect();
        perm.shuffle(&mut rng);
        let p = CodePermutation::window(perm).map_err(|e| e.to_string())?;
        let codes: Vec<u64> = (0..rng.gen_range(1..12)).map(|_| rng.gen_range(0..W)).collect();
        let e = ComputableElement::from_codes("e", d.clone(), codes.clone(), None);
        let r = recode_element(&e, &p, 2 * W).map_err(|e| e.to_string())?;
        let set = |x: &ComputableElement| -> Result<BTreeSet<String>, String> {
            Ok(x.decoded(codes.len(), DEFAULT_FUEL).map_err(|e| e.to_string())?.iter().map(|v| v.to_string()).collect())
        };
        ensure(set(&r)? == set(&e)?, || format!("permutation {i} changed the decoded set"))?;
    }
    let tri: DomainRef = std::sync::Arc::new(TriadicUnit);
    let unit = builtin("unitInterval").unwrap();
    let target = LimitDescriptor::rational(q(1, 2));
    let vals = [q(1, 3), q(4, 9), q(13, 27)].map(BasisValue::Rat);
    let e = ComputableElement::from_values("half", tri.clone(), &vals, Some(target.clone())).map_err(|e| e.to_string())?;
    let moved = change_basis(&e, &unit, &bridge_graph(&tri, &unit), 1000, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    ensure(moved.target() == Some(&target), || "target changed".into())?;
    moved.target_audit(4000, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    let cantor_moved = change_basis(
        &ComputableElement::from_codes("c", d.clone(), [4u32, 10], Some(LimitDescriptor::zeros())),
        &d,
        &bridge_graph(&d, &d),
        1000,
        DEFAULT_FUEL,
    )
    .map_err(|e| e.to_string())?;
    ensure(cantor_moved.target() == Some(&LimitDescriptor::zeros()), || "cantor target changed".into())?;
    Ok("50 permutations, triadic and cantor bridges".into())
}

fn witnesses() -> Outcome {
    let mut count = 0;
    let half = LimitDescriptor::rational(q(1, 2));
    let f = builtin("flippedUnit").unwrap();
    let mut families = BTreeSet::new();
    for a in ["1/4", "1/2", "3/4", "2/3"] {
        let code = f.encode(&f.parse_value(a).unwrap()).unwrap();
        let w = not_way_below_witness(&f, &code, &half, 100).map_err(|e| e.to_string())?;
        ensure(w.check.passed(), || format!("flippedUnit {a}: {:?}", w.check))?;
        families.insert(w.description.split_whitespace().next().unwrap_or("").to_string());
        count += 1;
    }
    ensure(families.len() == 2, || format!("expected D0 and D1, got {families:?}"))?;
    let qd = builtin("qDomain").unwrap();
    for c in [0u64, 2, 4, 10, 30] {
        let w = not_way_below_witness(&qd, &n(c), &LimitDescriptor::top("infinity"), 100).map_err(|e| e.to_string())?;
        ensure(w.check.passed(), || format!("qDomain code {c}: {:?}", w.check))?;
        count += 1;
    }
    let fan = builtin("fan").unwrap();
    for c in [0u64, 5, 17, 40] {
        let w = not_way_below_witness(&fan, &n(c), &LimitDescriptor::top("p"), 100).map_err(|e| e.to_string())?;
        ensure(w.check.passed(), || format!("fan code {c}: {:?}", w.check))?;
        count += 1;
    }
    Ok(format!("{count} witnesses, K = 100"))
}

fn measurements() -> Outcome {
    let l = builtin_measurement("cantor").unwrap();
    ensure(check_strict_monotone(&l, 256).map_err(|e| e.to_string())?.is_none(), || "length not strict".into())?;
    for name in ["cantor", "unitInterval"] {
        let m = generic_measurement(&builtin(name).unwrap(), 7).map_err(|e| e.to_string())?;
        let bad = check_monotone(&m, 64).map_err(|e| e.to_string())?;
        ensure(bad.is_none(), || format!("generic measurement on {name}: {bad:?}"))?;
    }
    let c = check_conditionally_connected(&builtin("cantor").unwrap(), 256).map_err(|e| e.to_string())?;
    ensure(c.is_none(), || format!("cantor gate failed: {c:?}"))?;
    let i = check_conditionally_connected(&builtin("interval(0,1)").unwrap(), 64).map_err(|e| e.to_string())?;
    match i {
        Some((x, y, z)) => Ok(format!("interval witness x = {x}, y = {y}, z = {z}")),
        None => Err("interval(0,1) passed the gate".into()),
    }
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 12] = [
        (1, "pairing bijection on {0..999}^2", 1, pairing),
        (2, "finite maps round-trip on 2^15 indices", 5, finite_maps),
        (3, "way-below oracle and Scott opens on random posets", 30, way_below_oracle),
        (4, "effective basis check at N = 128", 10, effective_basis),
        (5, "dovetail joins and fairness", 30, dovetail),
        (6, "bisection widths and brackets for x^2 - 2", 1, bisection),
        (7, "pi enclosures against the 50-digit reference", 10, pi_element_check),
        (8, "complexity audit for x = 1", 5, x_equals_one),
        (9, "identity application equals way-below closure", 10, function_application),
        (10, "model independence under recoding and bridges", 20, model_independence),
        (11, "not-way-below witnesses", 5, witnesses),
        (12, "measurements and the connectedness gate", 10, measurements),
    ];
    let mut failed = 0;
    for (id, title, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > Duration::from_secs(limit) => Err(format!("over the {limit}s limit")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => {
                failed += 1;
                ("FAIL", d.clone())
            }
        };
        println!("{tag} {id:>2} {title} [{:.2}s / {limit}s] {detail}", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 12 criteria passed");
}
