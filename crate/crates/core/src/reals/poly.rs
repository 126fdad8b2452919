use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_traits::{Signed, Zero};

use crate::Rational;

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("bad coefficient {0:?}: expected an integer or p/q")]
pub struct PolyParseError(pub String);

impl RationalPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Index of the last nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        let v = self.eval(x);
        if v.is_zero() {
            Ordering::Equal
        } else if v.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for RationalPoly {
    type Err = PolyParseError;

    /// Comma-separated coefficients, lowest degree first. Decimals are
    /// rejected; the Unicode minus sign is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let coeffs = s
            .split(',')
            .map(|c| {
                let t = c.trim().replace('\u{2212}', "-");
                t.parse::<Rational>().map_err(|_| PolyParseError(String::from(c.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn horner_values() {
        let p = RationalPoly::from_integers(&[-2, 0, 1]);
        assert_eq!(p.eval(&q(3, 2)), q(1, 4));
        assert_eq!(p.eval(&q(1, 1)), q(-1, 1));
        assert_eq!(p.eval(&Rational::zero()), q(-2, 1));
        assert_eq!(p.degree(), Some(2));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = RationalPoly::from_integers(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(RationalPoly::from_integers(&[0]).degree(), None);
    }

    #[test]
    fn parse_fractions_only() {
        let p: RationalPoly = "1/3, 0, 1".parse().unwrap();
        assert_eq!(p.coeffs(), &[q(1, 3), q(0, 1), q(1, 1)]);
        let m: RationalPoly = "\u{2212}2,0,1".parse().unwrap();
        assert_eq!(m, RationalPoly::from_integers(&[-2, 0, 1]));
        assert!("0.5,1".parse::<RationalPoly>().is_err());
        assert_eq!(p.to_string(), "1/3,0,1");
    }
}
