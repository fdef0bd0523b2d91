//! Eventually periodic digit sequences indexed from 0.
//!
//! A sequence a = (a_0, a_1, ...) over {0, ..., n-1} addresses how a grid
//! coarsens: truncations sum to location values L_a(j) = sum_{i<j} a_i n^i.
//! The sequences form the eventually periodic part of the n-adic integers,
//! and adding an ordinary integer (digitwise, with carries) is the group
//! action that re-representation of a grid uses.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::periodic;
use crate::rational::Base;

/// An eventually periodic digit sequence, held in canonical form: the
/// shortest (preperiod, period) pair, period nonempty, all digits below the
/// base. Unlike expansions, a period of repeating n-1 is a legitimate value
/// here (it is the n-adic integer -1).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitSequence {
    base: Base,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl DigitSequence {
    pub fn new(base: Base, mut preperiod: Vec<u32>, mut period: Vec<u32>) -> Result<DigitSequence> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for &d in preperiod.iter().chain(period.iter()) {
            base.check_digit(d)?;
        }
        periodic::minimize(&mut preperiod, &mut period);
        Ok(DigitSequence { base, preperiod, period })
    }

    /// The all-zero sequence (the n-adic integer 0).
    pub fn zeros(base: Base) -> DigitSequence {
        DigitSequence { base, preperiod: Vec::new(), period: vec![0] }
    }

    /// The sequence 1, 0, 1, 0, ... of alternating digits.
    pub fn alternating(base: Base) -> DigitSequence {
        DigitSequence { base, preperiod: Vec::new(), period: vec![1, 0] }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    /// Digit a_i, for any i >= 0.
    pub fn digit(&self, i: u64) -> u32 {
        periodic::digit_at(&self.preperiod, &self.period, i)
    }

    /// Location value L(j) = sum_{i<j} a_i n^i, an integer in [0, n^j).
    pub fn location_value(&self, j: u64) -> BigInt {
        let n = self.base.to_bigint();
        let mut acc = BigInt::zero();
        for i in (0..j).rev() {
            acc = acc * &n + BigInt::from(self.digit(i));
        }
        acc
    }

    /// Adds an ordinary integer n-adically: digitwise with carry (or borrow)
    /// propagation. The result satisfies, for every j >= 0,
    /// L_result(j) == L_self(j) + add (mod n^j).
    pub fn add_integer(&self, add: &BigInt) -> DigitSequence {
        let n = self.base.to_bigint();
        let mut carry = add.clone();
        let mut out: Vec<u32> = Vec::new();
        let step = |digit: u32, carry: &mut BigInt, out: &mut Vec<u32>| {
            let total = BigInt::from(digit) + &*carry;
            let (next, low) = total.div_mod_floor(&n);
            out.push(u32::try_from(&low).expect("reduced digit below base"));
            *carry = next;
        };
        for &d in &self.preperiod {
            step(d, &mut carry, &mut out);
        }
        let plen = self.period.len();
        let mut seen: HashMap<(usize, BigInt), usize> = HashMap::new();
        let mut pos = 0usize;
        let (mut preperiod, mut period) = loop {
            let key = (pos % plen, carry.clone());
            if let Some(&first) = seen.get(&key) {
                let cycle = out.split_off(first);
                break (out, cycle);
            }
            seen.insert(key, out.len());
            step(self.period[pos % plen], &mut carry, &mut out);
            pos += 1;
        };
        periodic::minimize(&mut preperiod, &mut period);
        DigitSequence { base: self.base, preperiod, period }
    }

    /// The ordinary integer this sequence equals, when it equals one:
    /// eventually-zero sequences are nonnegative integers, eventually-(n-1)
    /// sequences are negative ones. Everything else returns None.
    pub fn integer_value(&self) -> Option<BigInt> {
        let head = self.preperiod.len() as u64;
        if self.period == [0] {
            Some(self.location_value(head))
        } else if self.period == [self.base.top_digit()] {
            Some(self.location_value(head) - self.base.pow(head as i64).to_integer())
        } else {
            None
        }
    }

    /// Parses "d0,d1,...:p0,p1,..."; the preperiod side may be empty.
    pub fn parse(base: Base, token: &str) -> Result<DigitSequence> {
        let err = || Error::Parse { what: "digit sequence", token: token.to_string() };
        let (pre_str, per_str) = token.split_once(':').ok_or_else(err)?;
        if per_str.contains(':') {
            return Err(err());
        }
        let side = |s: &str| -> Result<Vec<u32>> {
            if s.trim().is_empty() {
                return Ok(Vec::new());
            }
            s.split(',').map(|d| d.trim().parse::<u32>().map_err(|_| err())).collect()
        };
        let preperiod = side(pre_str)?;
        let period = side(per_str)?;
        if period.is_empty() {
            return Err(err());
        }
        DigitSequence::new(base, preperiod, period)
    }

    /// The literal form accepted by `parse`, in canonical digits.
    pub fn literal(&self) -> String {
        let join = |ds: &[u32]| ds.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
        format!("{}:{}", join(&self.preperiod), join(&self.period))
    }
}
