//! Farness classification.
//!
//! A number delta is n-far when some constant C > 0 keeps
//! n^m |delta - k/n^m| >= C for every admissible index pair (m, k). Farness
//! is decided from the ties of the base-n expansion: maximal runs of the
//! digit 0 or n-1. The two distance constants computed here are
//!
//! d(delta), the infimum over m >= 0 of the distance from n^m delta to the
//! integers, and C(delta), the best constant over all pairs including
//! negative m,
//!
//! and for delta in [0, 1) with longest tie T the bracket
//! 1/n^(T+1) <= C(delta) <= 1/n^T holds.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expansion::{expand, BaseNExpansion};
use crate::rational::{frac, parse_rational, Base, Rational};

/// The longest tie length: finite, or infinite for the numbers that are not
/// far (those whose expansion ends in repeating 0 or repeating n-1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TieValue {
    Finite(u64),
    Infinite,
}

impl TieValue {
    pub fn is_finite(self) -> bool {
        matches!(self, TieValue::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            TieValue::Finite(t) => Some(t),
            TieValue::Infinite => None,
        }
    }
}

impl std::fmt::Display for TieValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TieValue::Finite(t) => write!(f, "{t}"),
            TieValue::Infinite => write!(f, "infinite"),
        }
    }
}

impl Serialize for TieValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TieValue::Finite(t) => s.serialize_u64(*t),
            TieValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for TieValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = TieValue;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a tie length or \"infinite\"")
            }
            fn visit_u64<E: serde::de::Error>(self, v: u64) -> std::result::Result<TieValue, E> {
                Ok(TieValue::Finite(v))
            }
            fn visit_str<E: serde::de::Error>(self, v: &str) -> std::result::Result<TieValue, E> {
                if v == "infinite" {
                    Ok(TieValue::Infinite)
                } else {
                    Err(E::custom("expected \"infinite\""))
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// A realized maximal tie: digits start..=end (1-based) all equal `digit`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieWitness {
    pub start: u64,
    pub end: u64,
    pub digit: u32,
}

/// Longest-tie report for one expansion. The witness is present exactly when
/// the tie length is finite and positive, and its run has that exact length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieReport {
    pub t_value: TieValue,
    pub witness: Option<TieWitness>,
}

/// Longest run of the digit 0 or n-1 in the expansion.
///
/// Scanning the preperiod followed by two copies of the period realizes every
/// run shape: interior runs, the junction run where the preperiod meets the
/// period, and the wrap run across period repetitions. The tie length is
/// infinite exactly when the period is all 0 or all n-1.
pub fn tie_length(e: &BaseNExpansion) -> TieReport {
    let top = e.base().top_digit();
    let all = |d: u32| e.period().iter().all(|&x| x == d);
    if all(0) || all(top) {
        return TieReport { t_value: TieValue::Infinite, witness: None };
    }
    let window: Vec<u32> = e
        .preperiod()
        .iter()
        .chain(e.period())
        .chain(e.period())
        .copied()
        .collect();
    let mut best: Option<TieWitness> = None;
    let mut run_start = 0usize;
    for i in 0..=window.len() {
        let extends = i > 0 && i < window.len() && window[i] == window[i - 1];
        if extends {
            continue;
        }
        if i > 0 {
            let d = window[i - 1];
            let len = (i - run_start) as u64;
            let better = best.as_ref().is_none_or(|w| len > w.end - w.start + 1);
            if (d == 0 || d == top) && better {
                best = Some(TieWitness {
                    start: run_start as u64 + 1,
                    end: i as u64,
                    digit: d,
                });
            }
        }
        run_start = i;
    }
    match best {
        Some(w) => TieReport { t_value: TieValue::Finite(w.end - w.start + 1), witness: Some(w) },
        None => TieReport { t_value: TieValue::Finite(0), witness: None },
    }
}

/// Whether delta is n-far. Farness is invariant under integer translation, so
/// only the fractional part's expansion matters.
pub fn is_n_far(delta: &Rational, base: Base) -> bool {
    let e = expand(&frac(delta), base).expect("fractional part lies in [0, 1)");
    tie_length(&e).t_value.is_finite()
}

/// d(delta) = inf over m >= 0 of dist(n^m delta, Z), as an attained exact
/// minimum: the orbit of the fractional part under multiplication by n is
/// eventually periodic, so only preperiod + period many values occur.
/// Zero exactly when delta is not far.
pub fn compute_d(delta: &Rational, base: Base) -> Rational {
    let f = frac(delta);
    if f.is_zero() {
        return Rational::zero();
    }
    let q = f.denom().clone();
    let n = base.to_bigint();
    let mut r = f.numer().clone();
    let mut seen = std::collections::HashSet::new();
    let mut best = q.clone();
    while seen.insert(r.clone()) {
        best = best.min(r.clone()).min(&q - &r);
        r = (r * &n).mod_floor(&q);
    }
    Rational::new(best, q)
}

/// The best farness constant C(delta): the infimum of n^m |delta - k/n^m|
/// over every admissible pair. The m >= 0 half is d(delta); for m < 0 the
/// candidates are |delta/n^t - k| with k != 0, and once n^t >= 2|delta| the
/// remaining values increase monotonically toward 1, so the scan stops there.
/// Zero exactly when delta is not far.
pub fn compute_c(delta: &Rational, base: Base) -> Rational {
    let part_a = compute_d(delta, base);
    let two_abs = delta.abs() * Rational::from_integer(BigInt::from(2));
    let mut part_b: Option<Rational> = None;
    let mut t = 1i64;
    loop {
        let scale = base.pow(t);
        let x = delta / &scale;
        let lo = x.floor().to_integer();
        for k in [lo.clone(), &lo + 1, BigInt::from(-1), BigInt::one()] {
            if k.is_zero() {
                continue;
            }
            let v = (&x - Rational::from_integer(k)).abs();
            if part_b.as_ref().is_none_or(|b| &v < b) {
                part_b = Some(v);
            }
        }
        if scale >= two_abs {
            break;
        }
        t += 1;
    }
    part_a.min(part_b.expect("at least one negative generation scanned"))
}

/// Everything the classification produces for one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FarnessCertificate {
    pub delta: Rational,
    pub base: Base,
    pub is_far: bool,
    pub tie: TieReport,
    pub d_value: Option<Rational>,
    pub c_value: Option<Rational>,
    /// For far inputs: whether 1/n^(T+1) <= C <= 1/n^T held. The bracket is
    /// guaranteed for delta in [0, 1); outside it this simply records the
    /// comparison. False for non-far inputs.
    pub bound_ok: bool,
}

fn tie_bound_holds(t: TieValue, c: Option<&Rational>, base: Base) -> bool {
    match (t, c) {
        (TieValue::Finite(t), Some(c)) => {
            let upper = base.pow(-(t as i64));
            let lower = base.pow(-(t as i64 + 1));
            &lower <= c && c <= &upper
        }
        _ => false,
    }
}

/// Classifies delta: tie report of the fractional part, then d and C when the
/// input is far.
pub fn certificate(delta: &Rational, base: Base) -> FarnessCertificate {
    let e = expand(&frac(delta), base).expect("fractional part lies in [0, 1)");
    let tie = tie_length(&e);
    let is_far = tie.t_value.is_finite();
    let (d_value, c_value) = if is_far {
        (Some(compute_d(delta, base)), Some(compute_c(delta, base)))
    } else {
        (None, None)
    };
    let bound_ok = tie_bound_holds(tie.t_value, c_value.as_ref(), base);
    FarnessCertificate {
        delta: delta.clone(),
        base,
        is_far,
        tie,
        d_value,
        c_value,
        bound_ok,
    }
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    delta: String,
    base: u32,
    is_far: bool,
    #[serde(rename = "T")]
    t: TieValue,
    #[serde(with = "crate::serde_util::ratio_string_opt")]
    d: Option<Rational>,
    #[serde(rename = "C", with = "crate::serde_util::ratio_string_opt")]
    c: Option<Rational>,
    witness: Option<TieWitness>,
}

impl Serialize for FarnessCertificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateWire {
            delta: crate::rational::format_rational(&self.delta),
            base: self.base.get(),
            is_far: self.is_far,
            t: self.tie.t_value,
            d: self.d_value.clone(),
            c: self.c_value.clone(),
            witness: self.tie.witness,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FarnessCertificate {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = CertificateWire::deserialize(d)?;
        let base = Base::new(w.base).map_err(D::Error::custom)?;
        let delta = parse_rational(&w.delta).map_err(D::Error::custom)?;
        let bound_ok = tie_bound_holds(w.t, w.c.as_ref(), base);
        Ok(FarnessCertificate {
            delta,
            base,
            is_far: w.is_far,
            tie: TieReport { t_value: w.t, witness: w.witness },
            d_value: w.d,
            c_value: w.c,
            bound_ok,
        })
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Certificate for 1/p, p prime with gcd(p, n) = 1. Every such reciprocal is
/// far and attains d(1/p) = 1/p exactly, which this checks.
pub fn family_one_over_prime(p: u64, base: Base) -> Result<FarnessCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if BigInt::from(p).gcd(&base.to_bigint()) != BigInt::one() {
        return Err(Error::NotCoprime(p.to_string(), base.to_string()));
    }
    let x = Rational::new(BigInt::one(), BigInt::from(p));
    let cert = certificate(&x, base);
    assert!(cert.is_far, "1/{p} must be {base}-far");
    assert_eq!(cert.d_value.as_ref(), Some(&x), "d(1/{p}) must equal 1/{p}");
    Ok(cert)
}

/// Certificate for the far number (h p + l)/(p n^j): a grid point h/n^j
/// nudged by l/(p n^j), where p is prime and coprime to both n and l. The
/// reduced denominator keeps the factor p, so the value is never of the form
/// k/n^m and is always far, which this checks.
pub fn family_grid_offset(h: i64, l: i64, j: u32, p: u64, base: Base) -> Result<FarnessCertificate> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let nl = base.to_bigint() * BigInt::from(l);
    if BigInt::from(p).gcd(&nl) != BigInt::one() {
        return Err(Error::NotCoprime(p.to_string(), nl.to_string()));
    }
    let num = BigInt::from(h) * BigInt::from(p) + BigInt::from(l);
    let den = BigInt::from(p) * base.pow(j as i64).to_integer();
    let x = Rational::new(num, den);
    let cert = certificate(&x, base);
    assert!(cert.is_far, "({h}*{p}+{l})/({p}*{base}^{j}) must be {base}-far");
    Ok(cert)
}

/// A total digit rule i -> a_i for i >= 1: a stream that need not be
/// eventually periodic, so farness can only be probed to a finite depth.
pub struct DigitStream {
    base: Base,
    rule: Box<dyn Fn(u64) -> u32 + Send + Sync>,
}

impl DigitStream {
    pub fn new(base: Base, rule: impl Fn(u64) -> u32 + Send + Sync + 'static) -> DigitStream {
        DigitStream { base, rule: Box::new(rule) }
    }

    /// Stream reading digits off an eventually periodic word.
    pub fn eventually_periodic(base: Base, preperiod: Vec<u32>, period: Vec<u32>) -> Result<DigitStream> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for &d in preperiod.iter().chain(period.iter()) {
            base.check_digit(d)?;
        }
        Ok(DigitStream::new(base, move |i| crate::periodic::digit_at(&preperiod, &period, i - 1)))
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn digit(&self, i: u64) -> u32 {
        assert!(i >= 1, "stream digits are indexed from 1");
        (self.rule)(i)
    }
}

impl std::fmt::Debug for DigitStream {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DigitStream").field("base", &self.base).finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StreamVerdict {
    FarAtDepth,
    NotFarSuspected,
    Undecided,
}

/// Result of a depth-bounded tie scan. `t_lower_bound` is exact for the
/// scanned window; the verdict is advisory and proves nothing about digits
/// beyond the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamReport {
    pub t_lower_bound: u64,
    pub verdict: StreamVerdict,
}

/// Scans digits 1..=depth of a stream for ties. The verdict heuristic: a
/// maximum witnessed only by the still-open run at the horizon is undecided;
/// otherwise a maximum that grew during the second half of the window
/// suggests unbounded ties, while a maximum that stabilized in the first half
/// (or a window with no tie digits at all) reads as far at this depth.
pub fn bounded_tie_analysis(stream: &DigitStream, depth: u64) -> Result<StreamReport> {
    assert!(depth >= 1, "depth must be positive");
    let base = stream.base();
    let top = base.top_digit();
    let half = depth / 2;
    let mut t_half = 0u64;
    let mut t_closed = 0u64;
    let mut run = 0u64;
    let mut prev = u32::MAX;
    for i in 1..=depth {
        let d = stream.digit(i);
        base.check_digit(d)?;
        let is_tie = d == 0 || d == top;
        if is_tie && d == prev {
            run += 1;
        } else {
            if prev == 0 || prev == top {
                t_closed = t_closed.max(run);
            }
            run = if is_tie { 1 } else { 0 };
        }
        if i <= half {
            t_half = t_half.max(if is_tie { run } else { 0 }).max(t_closed);
        }
        prev = d;
    }
    let trailing = run;
    let t = t_closed.max(trailing);
    let verdict = if t == 0 {
        StreamVerdict::FarAtDepth
    } else if trailing > t_closed {
        StreamVerdict::Undecided
    } else if t > t_half {
        StreamVerdict::NotFarSuspected
    } else {
        StreamVerdict::FarAtDepth
    };
    Ok(StreamReport { t_lower_bound: t, verdict })
}

/// Produces `count` distinct certified-far rationals strictly inside the open
/// interval. The values are grid points h/n^j nudged by l/(p n^j) for a prime
/// p coprime to n, so each reduced denominator keeps a prime factor foreign
/// to n and certification stays cheap no matter how narrow the interval is.
pub fn density_probe(
    interval: (&Rational, &Rational),
    base: Base,
    count: u64,
) -> Result<Vec<Rational>> {
    let (lo, hi) = interval;
    if lo >= hi {
        return Err(Error::EmptyInterval(lo.to_string(), hi.to_string()));
    }
    let width = hi - lo;
    let mut j = 0i64;
    while base.pow(-j) * Rational::from_integer(BigInt::from(2)) > width {
        j += 1;
    }
    let h = (lo * base.pow(j)).ceil().to_integer();
    let mut p = count + 1;
    while !is_prime(p) || BigInt::from(p).gcd(&base.to_bigint()) != BigInt::one() {
        p += 1;
    }
    let den = BigInt::from(p) * base.pow(j).to_integer();
    let mut out = Vec::with_capacity(count as usize);
    for l in 1..=count {
        let num = &h * BigInt::from(p) + BigInt::from(l);
        let x = Rational::new(num, den.clone());
        assert!(&x > lo && &x < hi, "probe value escaped the interval");
        assert!(is_n_far(&x, base), "probe value must be far");
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: u32) -> Base {
        Base::new(n).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    fn tie_of(x: Rational, n: u32) -> TieReport {
        tie_length(&expand(&x, b(n)).unwrap())
    }

    #[test]
    fn tie_lengths_of_reference_points() {
        assert_eq!(tie_of(r(1, 3), 2).t_value, TieValue::Finite(1));
        assert_eq!(tie_of(r(4, 7), 2).t_value, TieValue::Finite(2));
        assert_eq!(tie_of(r(1, 6), 2).t_value, TieValue::Finite(2));
        assert_eq!(tie_of(r(1, 2), 2).t_value, TieValue::Infinite);
        assert_eq!(tie_of(r(0, 1), 2).t_value, TieValue::Infinite);
        // all digits 1 in base 3: no tie digit at all
        assert_eq!(tie_of(r(1, 2), 3).t_value, TieValue::Finite(0));
    }

    #[test]
    fn tie_witness_runs_match_their_length() {
        let report = tie_of(r(4, 7), 2);
        let w = report.witness.unwrap();
        assert_eq!((w.start, w.end, w.digit), (2, 3, 0));
        assert!(tie_of(r(1, 2), 3).witness.is_none());
        assert!(tie_of(r(0, 1), 2).witness.is_none());
    }

    #[test]
    fn wrap_runs_are_found() {
        // 11/15 in base 2 repeats 1,0,1,1: the run of 1s wraps the period
        let report = tie_of(r(11, 15), 2);
        assert_eq!(report.t_value, TieValue::Finite(3));
        let w = report.witness.unwrap();
        assert_eq!(w.end - w.start + 1, 3);
        assert_eq!(w.digit, 1);
    }

    #[test]
    fn farness_of_reference_points() {
        assert!(is_n_far(&r(1, 3), b(2)));
        assert!(is_n_far(&r(10, 3), b(2)));
        assert!(is_n_far(&r(4, 7), b(2)));
        assert!(is_n_far(&r(1, 2), b(3)));
        assert!(!is_n_far(&r(1, 2), b(2)));
        assert!(!is_n_far(&r(1, 4), b(2)));
        assert!(!is_n_far(&r(0, 1), b(2)));
        assert!(!is_n_far(&r(7, 1), b(5)));
    }

    #[test]
    fn d_values() {
        assert_eq!(compute_d(&r(1, 3), b(2)), r(1, 3));
        assert_eq!(compute_d(&r(10, 3), b(2)), r(1, 3));
        assert_eq!(compute_d(&r(4, 7), b(2)), r(1, 7));
        assert_eq!(compute_d(&r(0, 1), b(2)), r(0, 1));
        assert_eq!(compute_d(&r(3, 4), b(2)), r(0, 1));
        assert_eq!(compute_d(&r(1, 2), b(3)), r(1, 2));
    }

    #[test]
    fn c_values() {
        assert_eq!(compute_c(&r(1, 3), b(2)), r(1, 3));
        assert_eq!(compute_c(&r(4, 7), b(2)), r(1, 7));
        assert_eq!(compute_c(&r(0, 1), b(2)), r(0, 1));
        assert_eq!(compute_c(&r(1, 2), b(3)), r(1, 2));
        // the infimum for 10/3 is attained at m = -2, k = 1: 4 * |10/3 - 4| / 16
        assert_eq!(compute_c(&r(10, 3), b(2)), r(1, 6));
        // integer multiples of powers of n reach zero through negative m
        assert_eq!(compute_c(&r(2, 1), b(2)), r(0, 1));
    }

    #[test]
    fn c_never_exceeds_d() {
        for (p, q) in [(1i64, 3i64), (4, 7), (10, 3), (5, 12), (22, 7)] {
            for n in [2u32, 3, 10] {
                let x = r(p, q);
                assert!(compute_c(&x, b(n)) <= compute_d(&x, b(n)), "{p}/{q} base {n}");
            }
        }
    }

    #[test]
    fn certificate_far_case() {
        let cert = certificate(&r(1, 3), b(2));
        assert!(cert.is_far);
        assert_eq!(cert.tie.t_value, TieValue::Finite(1));
        assert_eq!(cert.d_value, Some(r(1, 3)));
        assert_eq!(cert.c_value, Some(r(1, 3)));
        assert!(cert.bound_ok);
    }

    #[test]
    fn certificate_not_far_case() {
        let cert = certificate(&r(1, 4), b(2));
        assert!(!cert.is_far);
        assert_eq!(cert.tie.t_value, TieValue::Infinite);
        assert_eq!(cert.d_value, None);
        assert_eq!(cert.c_value, None);
        assert!(!cert.bound_ok);
    }

    #[test]
    fn certificate_bound_outside_unit_interval_is_reported_not_promised() {
        // T is computed from the fractional part, C from the value itself, so
        // the bracket can fail away from [0, 1) and bound_ok records that.
        let cert = certificate(&r(10, 3), b(2));
        assert!(cert.is_far);
        assert_eq!(cert.c_value, Some(r(1, 6)));
        assert!(!cert.bound_ok);
    }

    #[test]
    fn certificate_json_round_trip() {
        for x in [r(1, 3), r(10, 3), r(1, 4), r(0, 1)] {
            let cert = certificate(&x, b(2));
            let text = serde_json::to_string(&cert).unwrap();
            let back: FarnessCertificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, cert, "{text}");
            assert!(!text.contains('.'), "no floats in {text}");
        }
    }

    #[test]
    fn reciprocal_prime_family() {
        let cert = family_one_over_prime(7, b(2)).unwrap();
        assert_eq!(cert.d_value, Some(r(1, 7)));
        let cert = family_one_over_prime(3, b(2)).unwrap();
        assert_eq!(cert.d_value, Some(r(1, 3)));
        assert!(family_one_over_prime(2, b(2)).is_err());
        assert!(matches!(family_one_over_prime(9, b(2)), Err(Error::NotPrime(9))));
    }

    #[test]
    fn grid_offset_family() {
        let cert = family_grid_offset(1, 1, 1, 3, b(2)).unwrap();
        assert_eq!(cert.delta, r(2, 3));
        assert!(cert.is_far);
        assert!(matches!(family_grid_offset(0, 2, 0, 2, b(2)), Err(Error::NotCoprime(..))));
        assert!(matches!(family_grid_offset(1, 3, 2, 3, b(2)), Err(Error::NotCoprime(..))));
        // negative h and l are fine as long as the gcd condition holds
        assert!(family_grid_offset(-2, -1, 3, 5, b(2)).unwrap().is_far);
    }

    #[test]
    fn stream_with_bounded_ties_reads_far() {
        // blocks (1,0) repeated k times, then (1,0,0), for k = 1, 2, ...:
        // ties never exceed 2 even though the word is not periodic
        let stream = DigitStream::new(b(2), |i| {
            let mut pos = i - 1;
            let mut k = 1u64;
            loop {
                let block = 2 * k + 3;
                if pos < block {
                    return if pos < 2 * k { (pos % 2 == 0) as u32 } else { (pos == 2 * k) as u32 };
                }
                pos -= block;
                k += 1;
            }
        });
        let report = bounded_tie_analysis(&stream, 10_000).unwrap();
        assert_eq!(report.t_lower_bound, 2);
        assert_eq!(report.verdict, StreamVerdict::FarAtDepth);
    }

    #[test]
    fn stream_with_growing_ties_reads_not_far() {
        // 1, then k zeros, for k = 1, 2, ...: ties grow without bound
        let stream = DigitStream::new(b(2), |i| {
            let mut pos = i - 1;
            let mut k = 1u64;
            loop {
                if pos < k + 1 {
                    return (pos == 0) as u32;
                }
                pos -= k + 1;
                k += 1;
            }
        });
        let report = bounded_tie_analysis(&stream, 10_000).unwrap();
        assert!(report.t_lower_bound >= 100, "t = {}", report.t_lower_bound);
        assert_eq!(report.verdict, StreamVerdict::NotFarSuspected);
    }

    #[test]
    fn constant_middle_digit_stream_has_no_ties() {
        let stream = DigitStream::new(b(3), |_| 1);
        let report = bounded_tie_analysis(&stream, 1_000).unwrap();
        assert_eq!(report.t_lower_bound, 0);
        assert_eq!(report.verdict, StreamVerdict::FarAtDepth);
    }

    #[test]
    fn open_run_at_the_horizon_is_undecided() {
        // 1 followed by zeros forever, cut at depth 64
        let stream = DigitStream::eventually_periodic(b(2), vec![1], vec![0]).unwrap();
        let report = bounded_tie_analysis(&stream, 64).unwrap();
        assert_eq!(report.t_lower_bound, 63);
        assert_eq!(report.verdict, StreamVerdict::Undecided);
    }

    #[test]
    fn periodic_far_stream_reads_far() {
        let stream = DigitStream::eventually_periodic(b(2), vec![], vec![0, 1]).unwrap();
        let report = bounded_tie_analysis(&stream, 1_000).unwrap();
        assert_eq!(report.t_lower_bound, 1);
        assert_eq!(report.verdict, StreamVerdict::FarAtDepth);
    }

    #[test]
    fn stream_rejects_digits_at_or_above_the_base() {
        let stream = DigitStream::new(b(2), |_| 2);
        assert!(bounded_tie_analysis(&stream, 10).is_err());
    }

    #[test]
    fn density_probe_fills_intervals() {
        let lo = r(5, 1);
        let hi = r(6, 1);
        let got = density_probe((&lo, &hi), b(2), 3).unwrap();
        assert_eq!(got.len(), 3);
        for x in &got {
            assert!(x > &lo && x < &hi);
            assert!(is_n_far(x, b(2)));
        }
        let mut dedup = got.clone();
        dedup.dedup();
        assert_eq!(dedup.len(), 3);
    }

    #[test]
    fn density_probe_handles_narrow_intervals() {
        let lo = r(0, 1);
        let hi = r(1, 1024);
        let got = density_probe((&lo, &hi), b(2), 5).unwrap();
        assert_eq!(got.len(), 5);
        for x in &got {
            assert!(x > &lo && x < &hi);
        }
        assert!(density_probe((&hi, &lo), b(2), 1).is_err());
    }
}
