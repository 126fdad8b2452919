use std::fs;
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;

fn effdom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effdom")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines().find_map(|l| l.strip_prefix(key)).unwrap_or_else(|| panic!("no {key:?} in {text}")).trim()
}

#[test]
fn pair_closed_form() {
    let o = effdom(&["pair", "2", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "17\n");
    assert_eq!(stdout(&effdom(&["unpair", "17", "0"])), "2 3\n0 0\n");
}

#[test]
fn decode_carriers() {
    let o = effdom(&["decode", "--carrier", "fraction", "--range", "6"]);
    assert_eq!(stdout(&o), "0\n1/2\n1/3\n2/3\n1/4\n3/4\n");
    let o = effdom(&["decode", "--carrier", "string", "0", "1", "2", "3", "6"]);
    assert_eq!(stdout(&o), "\"\"\n\"0\"\n\"1\"\n\"00\"\n\"11\"\n");
    let o = effdom(&["decode", "--carrier", "interval", "0", "1"]);
    assert_eq!(stdout(&o), "[0, 1]\n[0, 0]\n");
}

#[test]
fn sqrt2_enclosure() {
    let o = effdom(&["real", "compute", "--poly", "\u{2212}2,0,1", "--interval", "1", "2", "--precision", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let lo: BigRational = field(&text, "lo ").parse().unwrap();
    let hi: BigRational = field(&text, "hi ").parse().unwrap();
    let two = BigRational::from_integer(BigInt::from(2));
    assert_eq!(&hi - &lo, BigRational::new(1.into(), 1024.into()));
    assert!(&lo * &lo <= two && two <= &hi * &hi);
    assert_eq!(field(&text, "decimal "), "[1.414062, 1.415040]");
}

#[test]
fn decimals_are_rejected() {
    let o = effdom(&["real", "compute", "--poly", "-2,0,1", "--interval", "1", "2.5", "--precision", "4"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn pi_enclosure_contains_reference() {
    let text = stdout(&effdom(&["real", "pi", "--precision", "8"]));
    let lo: BigRational = field(&text, "lo ").parse().unwrap();
    let hi: BigRational = field(&text, "hi ").parse().unwrap();
    let pi = BigRational::new(3_141_592_653_589_793u64.into(), 1_000_000_000_000_000u64.into());
    assert!(lo < pi && pi < hi);
    assert!(&hi - &lo <= BigRational::new(1.into(), 256.into()));
}

#[test]
fn two_chain_has_three_opens() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_chain.poset");
    fs::write(&path, "poset two_chain 2\ncover 0 1\n").unwrap();
    let o = effdom(&["domain", "check", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "scott opens: "), "3");
}

#[test]
fn cyclic_poset_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cycle.poset");
    fs::write(&path, "poset cycle 2\ncover 0 1\ncover 1 0\n").unwrap();
    assert_eq!(effdom(&["domain", "check", "--file", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn way_below_queries() {
    assert_eq!(stdout(&effdom(&["domain", "wb", "--name", "cantor", "--a", "01", "--b", "011"])), "true\n");
    assert_eq!(stdout(&effdom(&["domain", "wb", "--name", "cantor", "--a", "011", "--b", "01"])), "false\n");
    assert_eq!(effdom(&["domain", "wb", "--name", "qDomain", "--a", "0", "--b", "1"]).status.code(), Some(2));
}

#[test]
fn witnesses_and_basis_checks() {
    let o = effdom(&["domain", "witness", "--name", "flippedUnit", "--a", "1/4", "--limit", "1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = effdom(&["domain", "witness", "--name", "qDomain", "--a", "1/2", "--limit", "infinity"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = effdom(&["domain", "check", "--name", "cantor", "--window", "16"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("missing: []"));
}

#[test]
fn element_commands() {
    let o = effdom(&["element", "audit", "--name", "sqrt2", "--take", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("3 212 [11/8, 3/2]"));
    let o = effdom(&["element", "apply", "--fn", "scale3", "--element", "sqrt2", "--take", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("2 17 [15/4, 9/2]\n"), "{}", stdout(&o));
    assert_eq!(effdom(&["element", "apply", "--fn", "scale3", "--element", "zeros"]).status.code(), Some(2));
}

#[test]
fn audit_passes_and_output_is_deterministic() {
    let args = ["complexity", "audit", "--element", "one", "--take", "10"];
    let (a, b) = (effdom(&args), effdom(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().last().unwrap().starts_with("PASS"));
}

#[test]
fn short_table_fails_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("t.txt");
    fs::write(&table, "# two stages only\n15\n30\n").unwrap();
    let o = effdom(&["complexity", "audit", "--element", "one", "--bound", table.to_str().unwrap(), "--take", "4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL at n = [2, 3]"));
}

#[test]
fn csv_round_trips_through_audit_diff() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let o = effdom(&["complexity", "audit", "--element", "sqrt2", "--take", "8", "--emit", "csv", "--output", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let body = fs::read_to_string(&a).unwrap();
    assert!(body.starts_with("n,code,steps,bound,gap,eps,below,pass\n"));
    assert_eq!(body.lines().count(), 9);
    let o = effdom(&["audit-diff", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!((o.status.code(), stdout(&o)), (Some(0), "identical (8 rows)\n".to_string()));

    let c = dir.path().join("c.csv");
    let o = effdom(&["complexity", "audit", "--element", "sqrt2", "--take", "6", "--emit", "csv", "--output", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = effdom(&["audit-diff", a.to_str().unwrap(), c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).lines().count(), 2);
}

#[test]
fn fuel_override() {
    let o = Command::new(env!("CARGO_BIN_EXE_effdom"))
        .args(["complexity", "audit", "--element", "one", "--take", "3"])
        .env("EFFDOM_FUEL", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("fuel"));
    let o = Command::new(env!("CARGO_BIN_EXE_effdom")).args(["pair", "1", "1"]).env("EFFDOM_FUEL", "lots").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerator_commands() {
    let o = effdom(&["enum", "trace", "--schedule", "shell", "--take", "4"]);
    assert_eq!(stdout(&o), "n h g\n0 0 0\n1 1 1\n2 1 0\n3 0 1\n");
    let o = effdom(&["enum", "range", "--program", "(* n n)", "--take", "3"]);
    assert_eq!(stdout(&o), "n value steps\n0 0 3\n1 1 3\n2 4 3\n");
}

#[test]
fn seeded_checks_repeat() {
    let a = effdom(&["--seed", "7", "domain", "random", "--count", "30"]);
    let b = effdom(&["domain", "random", "--count", "30", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let o = effdom(&["complexity", "fan", "--candidates", "5"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    assert_eq!(effdom(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(effdom(&["element", "audit", "--name", "nope"]).status.code(), Some(2));
}
