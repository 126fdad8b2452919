use alloc::boxed::Box;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed};

use super::machin::machin_bounds;
use super::RationalPoly;
use crate::Rational;

/// A real number known symbolically, compared exactly against rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealPoint {
    Rational(Rational),
    /// The unique zero of `poly` in `[lo, hi]`, where `poly(lo)` and
    /// `poly(hi)` have strictly opposite signs.
    Root { poly: RationalPoly, lo: Rational, hi: Rational },
    Pi,
    /// `factor · base + offset` with `factor > 0`.
    Affine { factor: Rational, offset: Rational, base: Box<RealPoint> },
}

impl RealPoint {
    pub fn sqrt2() -> Self {
        RealPoint::Root {
            poly: RationalPoly::from_integers(&[-2, 0, 1]),
            lo: Rational::one(),
            hi: Rational::from_integer(2.into()),
        }
    }

    pub fn affine(self, factor: Rational, offset: Rational) -> Self {
        assert!(factor.is_positive(), "affine factor must be positive");
        RealPoint::Affine { factor, offset, base: Box::new(self) }
    }

    /// Ordering of this point relative to `q`: `Less` means `x < q`.
    pub fn cmp_rational(&self, q: &Rational) -> Ordering {
        match self {
            RealPoint::Rational(x) => x.cmp(q),
            RealPoint::Root { poly, lo, hi } => {
                if q < lo {
                    return Ordering::Greater;
                }
                if q > hi {
                    return Ordering::Less;
                }
                match poly.sign_at(q) {
                    Ordering::Equal => Ordering::Equal,
                    s if s == poly.sign_at(lo) => Ordering::Greater,
                    _ => Ordering::Less,
                }
            }
            RealPoint::Pi => {
                // π is irrational, so refinement always separates it from q.
                let mut terms = 4;
                loop {
                    let (lo, hi) = machin_bounds(terms);
                    if q < &lo {
                        return Ordering::Greater;
                    }
                    if q > &hi {
                        return Ordering::Less;
                    }
                    terms *= 2;
                }
            }
            RealPoint::Affine { factor, offset, base } => base.cmp_rational(&((q - offset) / factor)),
        }
    }

    pub fn lt(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Less
    }

    pub fn gt(&self, q: &Rational) -> bool {
        self.cmp_rational(q) == Ordering::Greater
    }

    pub fn describe(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPoint::Rational(q) => write!(f, "{q}"),
            RealPoint::Root { poly, lo, hi } => write!(f, "root of [{poly}] in [{lo}, {hi}]"),
            RealPoint::Pi => f.write_str("pi"),
            RealPoint::Affine { factor, offset, base } => write!(f, "{factor}*({base})+{offset}"),
        }
    }
}
