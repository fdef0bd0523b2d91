//! Exact rational scalars and the positional base they are expanded in.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// A positional base n >= 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u32);

impl Base {
    pub fn new(n: u32) -> Result<Base> {
        if n < 2 {
            return Err(Error::InvalidBase(n));
        }
        Ok(Base(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// n^m as an exact rational, for any sign of m.
    pub fn pow(self, m: i64) -> Rational {
        let p = self.to_bigint().pow(m.unsigned_abs() as u32);
        if m >= 0 {
            Rational::from_integer(p)
        } else {
            Rational::new(BigInt::one(), p)
        }
    }

    /// Largest digit, n - 1.
    pub fn top_digit(self) -> u32 {
        self.0 - 1
    }

    pub fn check_digit(self, digit: u32) -> Result<()> {
        if digit >= self.0 {
            return Err(Error::InvalidDigit { digit, base: self.0 });
        }
        Ok(())
    }
}

impl std::fmt::Display for Base {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An admissible index pair (m, k): every integer k is allowed when m >= 0,
/// while negative m requires k != 0. These pairs index the family of points
/// k/n^m against which farness is measured.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaPair {
    m: i64,
    k: BigInt,
}

impl SigmaPair {
    pub fn new(m: i64, k: BigInt) -> Result<SigmaPair> {
        if m < 0 && k.is_zero() {
            return Err(Error::BadIndexPair { m, k: k.to_string() });
        }
        Ok(SigmaPair { m, k })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    /// The point k/n^m this pair addresses.
    pub fn point(&self, base: Base) -> Rational {
        Rational::from_integer(self.k.clone()) * base.pow(-self.m)
    }

    /// The scaled distance n^m * |x - k/n^m|.
    pub fn scaled_distance(&self, x: &Rational, base: Base) -> Rational {
        (x - self.point(base)).abs() * base.pow(self.m)
    }
}

/// Splits x into (fractional part, floor): x = floor + frac with frac in [0, 1).
pub fn frac_floor(x: &Rational) -> (Rational, BigInt) {
    let fl = x.floor().to_integer();
    let frac = x - Rational::from_integer(fl.clone());
    (frac, fl)
}

/// Fractional part of x, in [0, 1).
pub fn frac(x: &Rational) -> Rational {
    frac_floor(x).0
}

/// Distance from x to the nearest integer, in [0, 1/2].
pub fn dist_to_integer(x: &Rational) -> Rational {
    let f = frac(x);
    let complement = Rational::one() - &f;
    f.min(complement)
}

/// Parses "p/q" or a bare integer "p", with an optional leading minus.
pub fn parse_rational(token: &str) -> Result<Rational> {
    let err = || Error::Parse { what: "rational", token: token.to_string() };
    let s = token.trim();
    if s.is_empty() {
        return Err(err());
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let num: BigInt = num_str.trim().parse().map_err(|_| err())?;
    let den: BigInt = match den_str {
        Some(d) => d.trim().parse().map_err(|_| err())?,
        None => BigInt::one(),
    };
    if den <= BigInt::zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Formats a rational as "p/q", or bare "p" when the denominator is 1.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
