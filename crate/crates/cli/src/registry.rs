//! Named elements, limits and audit setups available from the command line.

use anyhow::{anyhow, bail, Result};
use effdom_core::complexity::{builtin_measurement, phi0_program, t0_bound, ComplexityBound, Measurement};
use effdom_core::domains::{builtin, LimitDescriptor};
use effdom_core::elements::ComputableElement;
use effdom_core::machine::{Enumerator, Expr};
use effdom_core::reals::{bisection_element, pi_element, RationalPoly};
use effdom_core::Rational;
use num_traits::One;

pub const ELEMENTS: &[&str] = &["one", "sqrt2", "pi", "zeros"];

pub fn element(name: &str) -> Result<ComputableElement> {
    Ok(match name {
        "one" => {
            let d = builtin("unitInterval")?;
            let target = LimitDescriptor::rational(Rational::one());
            ComputableElement::new("one", d, Enumerator::program(phi0_program()), Some(target))
        }
        "sqrt2" => sqrt2()?,
        "pi" => pi_element(),
        "zeros" => {
            // Emission n is the word 0ⁿ, code 2ⁿ − 1.
            let stream = Enumerator::program("(- (pow 2 n) 1)".parse()?);
            ComputableElement::new("zeros", builtin("cantor")?, stream, Some(LimitDescriptor::zeros()))
        }
        other => bail!("unknown element {other:?} (known: {})", ELEMENTS.join(", ")),
    })
}

fn sqrt2() -> Result<ComputableElement> {
    let p = RationalPoly::from_integers(&[-2, 0, 1]);
    Ok(bisection_element(&p, &Rational::one(), &Rational::from_integer(2.into()))?)
}

/// `sqrt2`, `pi`, `zeros`, `evens`, `top:<name>` (with shortcuts `infinity`
/// and `p`), or an exact rational.
pub fn limit(text: &str) -> Result<LimitDescriptor> {
    Ok(match text.trim() {
        "sqrt2" => LimitDescriptor::sqrt2(),
        "pi" => LimitDescriptor::pi(),
        "zeros" => LimitDescriptor::zeros(),
        "evens" => LimitDescriptor::evens(),
        "infinity" | "p" => LimitDescriptor::top(text.trim()),
        t => match t.strip_prefix("top:") {
            Some(name) => LimitDescriptor::top(name),
            None => LimitDescriptor::rational(rational(t)?),
        },
    })
}

pub fn rational(text: &str) -> Result<Rational> {
    let t = text.trim().replace('\u{2212}', "-");
    if t.contains('.') {
        bail!("{text:?}: decimals are not accepted, write an exact fraction");
    }
    t.parse::<Rational>().map_err(|_| anyhow!("{text:?} is not a rational"))
}

/// The stage program, default bound and measurement used to audit a named
/// element.
pub struct AuditSetup {
    pub phi: Enumerator,
    pub bound: ComplexityBound,
    pub measurement: Measurement,
    pub target: LimitDescriptor,
}

pub fn audit_setup(name: &str) -> Result<AuditSetup> {
    Ok(match name {
        "one" => AuditSetup {
            phi: Enumerator::program(phi0_program()),
            bound: t0_bound(),
            measurement: builtin_measurement("unitInterval")?,
            target: LimitDescriptor::rational(Rational::one()),
        },
        "sqrt2" => {
            let e = sqrt2()?;
            AuditSetup {
                phi: Enumerator::program(Expr::call(e.stream().clone(), "(+ n 1)".parse()?)),
                bound: ComplexityBound::closed("(* 8 (+ n 2))").map_err(|e| anyhow!(e))?,
                measurement: builtin_measurement("interval(1,2)")?,
                target: LimitDescriptor::sqrt2(),
            }
        }
        "pi" => AuditSetup {
            phi: Enumerator::program(Expr::call(pi_element().stream().clone(), "(pow 2 n)".parse()?)),
            bound: ComplexityBound::closed("(* 1000 (pow 2 n))").map_err(|e| anyhow!(e))?,
            measurement: builtin_measurement("interval(3,4)")?,
            target: LimitDescriptor::pi(),
        },
        other => bail!("no complexity audit for {other:?} (known: one, sqrt2, pi)"),
    })
}
