//! Canonical base-n expansions of rationals in [0, 1).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::periodic;
use crate::rational::{Base, Rational};

/// The canonical expansion x = sum_{i>=1} a_i / n^i of some x in [0, 1).
///
/// Digits are indexed from 1. The pair (preperiod, period) is the unique
/// minimal one, the period is never the single digit n-1 (the finest
/// representation is used, so a terminating value ends in repeating 0), and
/// the period is nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseNExpansion {
    base: Base,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl BaseNExpansion {
    pub fn base(&self) -> Base {
        self.base
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Digit a_i for i >= 1.
    pub fn digit_at(&self, i: u64) -> u32 {
        assert!(i >= 1, "expansion digits are indexed from 1");
        periodic::digit_at(&self.preperiod, &self.period, i - 1)
    }

    /// True when the expansion ends in repeating 0, i.e. x = k/n^m.
    pub fn is_terminating(&self) -> bool {
        self.period == [0]
    }

    /// Exact value of the expansion.
    pub fn value(&self) -> Rational {
        let n = self.base.to_bigint();
        let mut head = BigInt::zero();
        for &d in &self.preperiod {
            head = head * &n + BigInt::from(d);
        }
        let mut cycle = BigInt::zero();
        for &d in &self.period {
            cycle = cycle * &n + BigInt::from(d);
        }
        let scale = self.base.pow(self.preperiod.len() as i64);
        let cycle_den = n.pow(self.period.len() as u32) - BigInt::one();
        (Rational::from_integer(head) + Rational::new(cycle, cycle_den)) / scale
    }
}

/// Expands x in [0, 1) by long division, detecting the remainder cycle.
///
/// The digit stream produced this way is the finest representation (it never
/// ends in repeating n-1), and the first repeated remainder marks the minimal
/// (preperiod, period) split. Preperiod plus period never exceed the
/// denominator of x.
pub fn expand(x: &Rational, base: Base) -> Result<BaseNExpansion> {
    if x < &Rational::zero() || x >= &Rational::one() {
        return Err(Error::OutsideUnitInterval(x.to_string()));
    }
    let q = x.denom().clone();
    let n = base.to_bigint();
    let mut r = x.numer().clone();
    let mut digits: Vec<u32> = Vec::new();
    let mut seen: HashMap<BigInt, usize> = HashMap::new();
    let cycle_start = loop {
        if let Some(&at) = seen.get(&r) {
            break at;
        }
        seen.insert(r.clone(), digits.len());
        let t = r * &n;
        let d = &t / &q;
        digits.push(u32::try_from(&d).expect("digit below base"));
        r = t - d * &q;
    };
    let mut period = digits.split_off(cycle_start);
    let mut preperiod = digits;
    periodic::minimize(&mut preperiod, &mut period);
    Ok(BaseNExpansion { base, preperiod, period })
}
