//! `effdom`: inspect codes, enumerators and domains, compute reals and run
//! complexity audits from the command line.

mod poset_file;
mod registry;
mod render;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use effdom_core::codes::{decode_fraction, decode_interval, decode_string, pair, unpair, Ambient};
use effdom_core::complexity::{
    element_complexity_audit, fan_diagonal, polytime_check, AuditReport, ComplexityBound, FanOpen, Precision,
};
use effdom_core::domains::{
    builtin, check_effective_basis, check_order_axioms, conditionally_connected, not_way_below_witness,
    scott_opens, upper_sets, way_below_matrix, FinitePoset,
};
use effdom_core::elements::{apply_function, directedness_audit, image_stream, ComputableFunction, Directedness};
use effdom_core::machine::{CantorSchedule, Enumerator, Expr, Schedule, ShellSchedule, DEFAULT_FUEL};
use effdom_core::reals::{bisection_element, enclose, pi_element, RationalPoly};
use effdom_core::{Nat, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use registry::rational;

/// Default seed for randomized checks.
const SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "effdom", version, about = "Effectively given domains over exact arithmetic")]
struct Cli {
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cantor pairing ⟨n, m⟩.
    Pair { n: Nat, m: Nat },
    /// Inverse pairing, one `n m` line per code.
    Unpair { codes: Vec<Nat> },
    /// Decode indices through a finite map.
    Decode(DecodeArgs),
    #[command(subcommand)]
    Enum(EnumCommand),
    #[command(subcommand)]
    Domain(DomainCommand),
    #[command(subcommand)]
    Element(ElementCommand),
    #[command(subcommand)]
    Real(RealCommand),
    #[command(subcommand)]
    Complexity(ComplexityCommand),
    /// Compare two audit CSV files row by row.
    AuditDiff { left: PathBuf, right: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Carrier {
    Fraction,
    String,
    Interval,
}

#[derive(Args)]
struct DecodeArgs {
    #[arg(long, value_enum)]
    carrier: Carrier,
    /// Ambient interval for `--carrier interval`.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    ambient: Option<Vec<String>>,
    /// Decode indices `0..range` instead of the listed ones.
    #[arg(long, conflicts_with = "indices")]
    range: Option<u64>,
    indices: Vec<Nat>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScheduleName {
    Shell,
    Cantor,
}

#[derive(Subcommand)]
enum EnumCommand {
    /// Print the (g, h) cell compared at each dovetail step.
    Trace {
        #[arg(long, value_enum, default_value = "shell")]
        schedule: ScheduleName,
        #[arg(long, default_value_t = 16)]
        take: u64,
    },
    /// Evaluate a program at n = 0, 1, … with step counts.
    Range {
        /// Program in the expression language, e.g. `(* n n)`.
        #[arg(long)]
        program: String,
        #[arg(long, default_value_t = 10)]
        take: u64,
    },
}

#[derive(Subcommand)]
enum DomainCommand {
    /// Analyse a poset file, or cross-check a built-in domain's basis.
    Check {
        #[arg(long, conflicts_with = "name")]
        file: Option<PathBuf>,
        #[arg(long)]
        name: Option<String>,
        /// Code window for built-in domains.
        #[arg(long, default_value_t = 32)]
        window: u64,
    },
    /// Decide a ≪ b between basis values of a built-in domain.
    Wb {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Build and verify a directed family showing ¬(a ≪ limit).
    Witness {
        #[arg(long)]
        name: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        limit: String,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Compare the way-below oracle and Scott opens on random posets.
    Random {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FunctionName {
    Identity,
    Scale3,
}

#[derive(Subcommand)]
enum ElementCommand {
    /// Decode the first emissions of a named element and audit them.
    Audit {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(registry::ELEMENTS))]
        name: String,
        #[arg(long, default_value_t = 8)]
        take: usize,
    },
    /// Push a named element through a function.
    Apply {
        #[arg(long = "fn", value_enum)]
        function: FunctionName,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 8)]
        take: usize,
        /// Dovetail through the way-below graph instead of mapping emissions.
        #[arg(long)]
        graph: bool,
    },
}

#[derive(Subcommand)]
enum RealCommand {
    /// Enclose the root of a polynomial by bisection.
    Compute {
        /// Coefficients, lowest degree first, e.g. "-2,0,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        interval: Vec<String>,
        #[arg(long)]
        precision: u32,
    },
    /// Enclose π from the Leibniz stream.
    Pi {
        #[arg(long)]
        precision: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Table,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum PrecisionSchedule {
    Dyadic,
    Harmonic,
}

#[derive(Subcommand)]
enum ComplexityCommand {
    /// Audit steps and μ-gaps of a named element stage by stage.
    Audit {
        #[arg(long)]
        element: String,
        /// Closed form in `n`, or a file with one bound per line.
        #[arg(long)]
        bound: Option<String>,
        #[arg(long, default_value_t = 12)]
        take: u64,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
        #[arg(long = "precision-schedule", value_enum, default_value = "dyadic")]
        schedule: PrecisionSchedule,
    },
    /// Diagonalise against random fan opens.
    Fan {
        #[arg(long, default_value_t = 8)]
        candidates: usize,
    },
}

/// Audit outcome; errors are reported separately.
enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from(ok: bool) -> Self {
        if ok { Status::Pass } else { Status::Fail }
    }
}

fn fuel() -> Result<u64> {
    match std::env::var("EFFDOM_FUEL") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow!("EFFDOM_FUEL={v:?} is not a step count")),
        Err(_) => Ok(DEFAULT_FUEL),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = (|| {
        let fuel = fuel()?;
        let mut out: Box<dyn Write> = match &cli.output {
            Some(p) => Box::new(io::BufWriter::new(
                fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
            None => Box::new(io::BufWriter::new(io::stdout().lock())),
        };
        let status = run(&cli, fuel, &mut out)?;
        out.flush()?;
        Ok::<_, anyhow::Error>(status)
    })();
    match result {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("effdom: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match &cli.command {
        Command::Pair { n, m } => {
            writeln!(out, "{}", pair(n, m))?;
            Ok(Status::Pass)
        }
        Command::Unpair { codes } => {
            for k in codes {
                let (n, m) = unpair(k);
                writeln!(out, "{n} {m}")?;
            }
            Ok(Status::Pass)
        }
        Command::Decode(args) => decode(args, out),
        Command::Enum(cmd) => enumerate(cmd, fuel, out),
        Command::Domain(cmd) => domain(cmd, cli.seed, fuel, out),
        Command::Element(cmd) => element(cmd, fuel, out),
        Command::Real(cmd) => real(cmd, fuel, out),
        Command::Complexity(cmd) => complexity(cmd, cli.seed, fuel, out),
        Command::AuditDiff { left, right } => audit_diff(left, right, out),
    }
}

fn decode(args: &DecodeArgs, out: &mut dyn Write) -> Result<Status> {
    let indices: Vec<Nat> = match args.range {
        Some(r) => (0..r).map(Nat::from).collect(),
        None => args.indices.clone(),
    };
    let ambient = match &args.ambient {
        Some(ab) => Ambient::new(rational(&ab[0])?, rational(&ab[1])?)?,
        None => Ambient::unit(),
    };
    for i in &indices {
        match args.carrier {
            Carrier::Fraction => writeln!(out, "{}", decode_fraction(i)?)?,
            Carrier::String => writeln!(out, "\"{}\"", decode_string(i))?,
            Carrier::Interval => writeln!(out, "{}", decode_interval(i, &ambient)?)?,
        }
    }
    Ok(Status::Pass)
}

fn enumerate(cmd: &EnumCommand, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        EnumCommand::Trace { schedule, take } => {
            let s: &dyn Schedule = match schedule {
                ScheduleName::Shell => &ShellSchedule,
                ScheduleName::Cantor => &CantorSchedule,
            };
            writeln!(out, "n h g")?;
            for n in 0..*take {
                let (p, q) = s.cell(&Nat::from(n));
                writeln!(out, "{n} {p} {q}")?;
            }
        }
        EnumCommand::Range { program, take } => {
            let e = Enumerator::program(program.parse::<Expr>().map_err(|e| anyhow!("{e}"))?);
            writeln!(out, "n value steps")?;
            for n in 0..*take {
                let ev = e.evaluate_u64(n, fuel)?;
                writeln!(out, "{n} {} {}", ev.value, ev.steps)?;
            }
        }
    }
    Ok(Status::Pass)
}

fn domain(cmd: &DomainCommand, seed: u64, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        DomainCommand::Check { file: Some(path), .. } => {
            let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            let p = poset_file::parse_poset(&text)?;
            describe_poset(&p, out)
        }
        DomainCommand::Check { name: Some(name), window, .. } => {
            let d = builtin(name)?;
            let mut ok = true;
            match check_order_axioms(&d, (*window).min(64))? {
                None => writeln!(out, "order axioms: pass")?,
                Some(v) => {
                    ok = false;
                    writeln!(out, "order axioms: {v:?}")?;
                }
            }
            if d.has_way_below() {
                let r = check_effective_basis(&d, *window, fuel)?;
                writeln!(out, "way-below pairs in window {}: {}", r.window, r.true_pairs)?;
                writeln!(out, "graph indices scanned: {}", r.scanned)?;
                writeln!(out, "missing: {:?}", r.missing)?;
                writeln!(out, "spurious: {:?}", r.spurious)?;
                ok &= r.mismatches() == 0;
            } else {
                writeln!(out, "{} has only a weak basis: no way-below graph", d.name())?;
            }
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            Ok(Status::from(ok))
        }
        DomainCommand::Check { .. } => bail!("domain check needs --file or --name"),
        DomainCommand::Wb { name, a, b } => {
            let d = builtin(name)?;
            let (a, b) = (d.parse_value(a)?, d.parse_value(b)?);
            writeln!(out, "{}", d.way_below_values(&a, &b)?)?;
            Ok(Status::Pass)
        }
        DomainCommand::Witness { name, a, limit, count } => {
            let d = builtin(name)?;
            let code = d.encode(&d.parse_value(a)?)?;
            let x = registry::limit(limit)?;
            let w = not_way_below_witness(&d, &code, &x, *count)?;
            writeln!(out, "{}", w.description)?;
            let shown: Vec<String> = w.members.iter().take(5).map(|m| m.to_string()).collect();
            writeln!(out, "first members: {} …", shown.join(", "))?;
            let c = w.check;
            writeln!(out, "below limit: {}", c.below_limit)?;
            writeln!(out, "avoids a: {}", c.avoids)?;
            writeln!(out, "directed: {}", c.directed)?;
            writeln!(out, "unbounded: {}", c.unbounded)?;
            writeln!(out, "{} ({} members)", if c.passed() { "PASS" } else { "FAIL" }, w.members.len())?;
            Ok(Status::from(c.passed()))
        }
        DomainCommand::Random { count, size } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut bad = 0;
            for i in 0..*count {
                let p = random_poset(&mut rng, *size)?;
                let wb = way_below_matrix(&p)?;
                let agrees = (0..p.size()).all(|a| (0..p.size()).all(|b| wb[a][b] == p.leq(a, b)));
                let opens_ok = p.size() > 5 || scott_opens(&p)? == upper_sets(&p)?;
                if !(agrees && opens_ok) {
                    bad += 1;
                    writeln!(out, "poset {i}: mismatch")?;
                }
            }
            writeln!(out, "{count} posets, {bad} mismatches, seed {seed}")?;
            Ok(Status::from(bad == 0))
        }
    }
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> Result<FinitePoset> {
    let size = rng.gen_range(1..=max.max(1));
    let covers: Vec<(usize, usize)> =
        (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).filter(|_| rng.gen_bool(0.3)).collect();
    Ok(FinitePoset::from_covers("random", size, &covers)?)
}

fn describe_poset(p: &FinitePoset, out: &mut dyn Write) -> Result<Status> {
    writeln!(out, "poset {} with {} elements", p.name(), p.size())?;
    let n = p.size();
    let order: Vec<String> =
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && p.leq(a, b)).map(|(a, b)| format!("{a}<={b}")).collect();
    writeln!(out, "order: {}", if order.is_empty() { "discrete".into() } else { order.join(" ") })?;
    let compact = way_below_matrix(p)?.iter().enumerate().filter(|(a, row)| row[*a]).count();
    writeln!(out, "compact elements: {compact}")?;
    let opens = scott_opens(p)?;
    writeln!(out, "scott opens: {}", opens.len())?;
    for o in &opens {
        let members: Vec<String> = o.iter().map(|v| v.to_string()).collect();
        writeln!(out, "  {{{}}}", members.join(", "))?;
    }
    match conditionally_connected(p) {
        None => writeln!(out, "conditionally connected: yes")?,
        Some((x, y, z)) => writeln!(out, "conditionally connected: no ({x}, {y} below {z})")?,
    }
    Ok(Status::Pass)
}

fn element(cmd: &ElementCommand, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        ElementCommand::Audit { name, take } => {
            let e = registry::element(name)?;
            writeln!(out, "{} on {}", e.name(), e.domain().name())?;
            let codes = e.emissions(*take, fuel)?;
            for (i, c) in codes.iter().enumerate() {
                writeln!(out, "{i} {c} {}", e.domain().decode(c)?)?;
            }
            let target_ok = match e.target_audit(*take, fuel) {
                Ok(()) => true,
                Err(err) => {
                    writeln!(out, "target: {err}")?;
                    false
                }
            };
            if let Some(t) = e.target() {
                writeln!(out, "below {t}: {target_ok}")?;
            }
            let directed = directedness_audit(&e, *take, *take, fuel)?;
            let ok = target_ok && directed == Directedness::Pass;
            match directed {
                Directedness::Pass => writeln!(out, "directed: true")?,
                Directedness::Unjoined { i, j, a, b } => {
                    writeln!(out, "directed: false (emissions {i} = {a} and {j} = {b} have no joint bound)")?
                }
            }
            writeln!(out, "{}", if ok { "PASS" } else { "FAIL" })?;
            Ok(Status::from(ok))
        }
        ElementCommand::Apply { function, element, take, graph } => {
            let e = registry::element(element)?;
            let f = match function {
                FunctionName::Identity => ComputableFunction::identity(e.domain().clone()),
                FunctionName::Scale3 => {
                    let name = e.domain().name();
                    let ends = name
                        .strip_prefix("interval(")
                        .and_then(|r| r.strip_suffix(')'))
                        .and_then(|r| r.split_once(','))
                        .ok_or_else(|| anyhow!("scale3 needs an interval element, {element} lives on {name}"))?;
                    ComputableFunction::scale3(rational(ends.0)?, rational(ends.1)?)?
                }
            };
            let fx = if *graph { apply_function(&f, &e)? } else { image_stream(&f, &e)? };
            writeln!(out, "{} applied to {} on {}", f.name(), e.name(), fx.domain().name())?;
            for (i, c) in fx.emissions(*take, fuel)?.iter().enumerate() {
                writeln!(out, "{i} {c} {}", fx.domain().decode(c)?)?;
            }
            Ok(Status::Pass)
        }
    }
}

fn print_enclosure(out: &mut dyn Write, lo: &Rational, hi: &Rational, bits: u32) -> Result<()> {
    let digits = render::digits_for(bits);
    writeln!(out, "lo {lo}")?;
    writeln!(out, "hi {hi}")?;
    writeln!(out, "width {}", hi - lo)?;
    writeln!(out, "decimal [{}, {}]", render::decimal(lo, digits, false), render::decimal(hi, digits, true))?;
    Ok(())
}

fn real(cmd: &RealCommand, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        RealCommand::Compute { poly, interval, precision } => {
            let p = poly.parse::<RationalPoly>().map_err(|e| anyhow!("bad coefficient {:?}", e.0))?;
            let (a, b) = (rational(&interval[0])?, rational(&interval[1])?);
            let e = bisection_element(&p, &a, &b)?;
            let iv = enclose(&e, *precision, u64::from(*precision) + 2, fuel)?;
            print_enclosure(out, iv.lo(), iv.hi(), *precision)?;
        }
        RealCommand::Pi { precision } => {
            // The stream converges linearly: width 2^-n needs about 2^(n-1) terms.
            let budget = 1u64 << (precision + 1).min(62);
            let iv = enclose(&pi_element(), *precision, budget, fuel)
                .with_context(|| format!("pi to {precision} bits (raise EFFDOM_FUEL for more)"))?;
            print_enclosure(out, iv.lo(), iv.hi(), *precision)?;
        }
    }
    Ok(Status::Pass)
}

const CSV_HEADER: [&str; 8] = ["n", "code", "steps", "bound", "gap", "eps", "below", "pass"];

fn complexity(cmd: &ComplexityCommand, seed: u64, fuel: u64, out: &mut dyn Write) -> Result<Status> {
    match cmd {
        ComplexityCommand::Audit { element, bound, take, emit, schedule } => {
            let setup = registry::audit_setup(element)?;
            let t = match bound {
                None => setup.bound.clone(),
                Some(b) => parse_bound(b)?,
            };
            let precision = match schedule {
                PrecisionSchedule::Dyadic => Precision::Dyadic,
                PrecisionSchedule::Harmonic => Precision::Harmonic,
            };
            let r = element_complexity_audit(&setup.phi, &t, &setup.measurement, &setup.target, *take, precision, fuel)?;
            match emit {
                Emit::Csv => write_csv(&r, out)?,
                Emit::Table => write_table(&r, out)?,
            }
            Ok(Status::from(r.passed()))
        }
        ComplexityCommand::Fan { candidates } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cands: Vec<FanOpen> = (0..*candidates)
                .map(|_| FanOpen { thresholds: (0..*candidates).map(|_| rng.gen_range(0..50)).collect() })
                .collect();
            let d = fan_diagonal(&cands).ok_or_else(|| anyhow!("no diagonal point"))?;
            let t: Vec<String> = d.diagonal.thresholds.iter().map(|t| t.to_string()).collect();
            writeln!(out, "diagonal thresholds {}", t.join(" "))?;
            for (i, w) in d.witnesses.iter().enumerate() {
                writeln!(out, "candidate {i} contains {w}, the diagonal does not")?;
            }
            let ok = d.verify(&cands);
            writeln!(out, "{} (seed {seed})", if ok { "PASS" } else { "FAIL" })?;
            Ok(Status::from(ok))
        }
    }
}

fn parse_bound(text: &str) -> Result<ComplexityBound> {
    let path = Path::new(text);
    if path.is_file() {
        let body = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let table = body
            .lines()
            .enumerate()
            .map(|(i, l)| (i, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .map(|(i, l)| l.parse::<u64>().with_context(|| format!("{}:{}: bad bound {l:?}", path.display(), i + 1)))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ComplexityBound::Table(table));
    }
    ComplexityBound::closed(text).map_err(|e| anyhow!("bound {text:?}: {e}"))
}

fn row_fields(r: &AuditReport) -> Vec<[String; 8]> {
    r.rows
        .iter()
        .map(|row| {
            [
                row.n.to_string(),
                row.code.to_string(),
                row.steps.to_string(),
                row.bound.map_or_else(|| "-".into(), |b| b.to_string()),
                row.gap.to_string(),
                row.eps.to_string(),
                row.below.to_string(),
                row.passed().to_string(),
            ]
        })
        .collect()
}

fn write_csv(r: &AuditReport, out: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for fields in row_fields(r) {
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

fn write_table(r: &AuditReport, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "audit {} against {}", r.subject, r.bound)?;
    let rows = row_fields(r);
    let mut widths = CSV_HEADER.map(str::len);
    for fields in &rows {
        for (w, f) in widths.iter_mut().zip(fields) {
            *w = (*w).max(f.len());
        }
    }
    let line = |fields: &[&str]| {
        fields.iter().zip(widths).map(|(f, w)| format!("{f:>w$}")).collect::<Vec<_>>().join("  ")
    };
    writeln!(out, "{}", line(&CSV_HEADER))?;
    for fields in &rows {
        let refs: Vec<&str> = fields.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&refs))?;
    }
    writeln!(out, "directed: {}", r.directed)?;
    writeln!(out, "fit: {}", polytime_check(&r.steps(), 4))?;
    let failures = r.failures();
    if failures.is_empty() {
        writeln!(out, "PASS ({} stages)", r.rows.len())?;
    } else {
        writeln!(out, "FAIL at n = {failures:?}")?;
    }
    Ok(())
}

fn read_audit_csv(path: &Path) -> Result<Vec<csv::StringRecord>> {
    let mut rd = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        bail!("{}: not an audit CSV (header {:?})", path.display(), header.iter().collect::<Vec<_>>());
    }
    let rows = rd.records().collect::<Result<Vec<_>, _>>()?;
    for (i, row) in rows.iter().enumerate() {
        row[0].parse::<u64>().with_context(|| format!("{} row {}: bad n", path.display(), i + 1))?;
        row[4].parse::<Rational>().map_err(|_| anyhow!("{} row {}: bad gap", path.display(), i + 1))?;
    }
    Ok(rows)
}

fn audit_diff(left: &Path, right: &Path, out: &mut dyn Write) -> Result<Status> {
    let (a, b) = (read_audit_csv(left)?, read_audit_csv(right)?);
    let mut differences = 0;
    for i in 0..a.len().max(b.len()) {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => {
                for (k, col) in CSV_HEADER.iter().enumerate() {
                    if x[k] != y[k] {
                        differences += 1;
                        writeln!(out, "n={}: {col} {} vs {}", &x[0], &x[k], &y[k])?;
                    }
                }
            }
            (Some(x), None) => {
                differences += 1;
                writeln!(out, "n={}: only in {}", &x[0], left.display())?;
            }
            (None, Some(y)) => {
                differences += 1;
                writeln!(out, "n={}: only in {}", &y[0], right.display())?;
            }
            (None, None) => unreachable!(),
        }
    }
    if differences == 0 {
        writeln!(out, "identical ({} rows)", a.len())?;
    }
    Ok(Status::from(differences == 0))
}
