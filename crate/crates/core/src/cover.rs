//! Covering queries over a pair of grids: the smallest single cell of either
//! grid that contains a given half-open interval, the cover-to-query length
//! ratio, randomized estimates of its spread, and adversarial queries that
//! force the ratio to blow up when the shift gap is not far.
//!
//! Decidability rests on one observation: generation-m endpoint sets shrink
//! as m decreases, and the only point that survives into every coarse
//! generation is shift + c for a location that is the n-adic expansion of an
//! ordinary integer c. A query can defeat a grid forever only by trapping
//! that point in its interior, so one upfront check settles coverability and
//! the downward scan always terminates.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::far::is_n_far;
use crate::grid::{standard_grid, translated_standard_grid, GridRep, Interval};
use crate::rational::{format_rational, Base, Rational};

/// A half-open query interval [left, right) with left < right.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Query {
    #[serde(with = "crate::serde_util::ratio_string")]
    left: Rational,
    #[serde(with = "crate::serde_util::ratio_string")]
    right: Rational,
}

impl Query {
    pub fn new(left: Rational, right: Rational) -> Result<Query> {
        if left >= right {
            return Err(Error::EmptyInterval(format_rational(&left), format_rational(&right)));
        }
        Ok(Query { left, right })
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn right(&self) -> &Rational {
        &self.right
    }

    pub fn width(&self) -> Rational {
        &self.right - &self.left
    }
}

impl<'de> Deserialize<'de> for Query {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            #[serde(with = "crate::serde_util::ratio_string")]
            left: Rational,
            #[serde(with = "crate::serde_util::ratio_string")]
            right: Rational,
        }
        let w = Wire::deserialize(d)?;
        Query::new(w.left, w.right).map_err(D::Error::custom)
    }
}

/// Which of the two grids supplied the covering cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GridSource {
    #[serde(rename = "FIRST_GRID")]
    First,
    #[serde(rename = "SECOND_GRID")]
    Second,
}

/// The minimal covering cell, its provenance, and |cover| / |query|.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverResult {
    pub interval: Interval,
    pub source: GridSource,
    #[serde(with = "crate::serde_util::ratio_string")]
    pub ratio: Rational,
}

/// The single point of g that stays an endpoint at every generation, if any:
/// shift + c when the location is the n-adic expansion of the integer c.
pub fn core_point(g: &GridRep) -> Option<Rational> {
    g.location().integer_value().map(|c| g.shift() + Rational::from_integer(c))
}

fn blocked(g: &GridRep, q: &Query) -> bool {
    core_point(g).is_some_and(|c| q.left() < &c && &c < q.right())
}

/// Finest generation whose cells are at least as long as the query.
fn start_generation(base: Base, width: &Rational) -> i64 {
    let mut m = 0i64;
    while &base.pow(-m) < width {
        m -= 1;
    }
    while &base.pow(-(m + 1)) >= width {
        m += 1;
    }
    m
}

/// Finds the minimal cover of q among all cells of both grids: the finest
/// generation wins, and at equal generation the first grid wins. Fails with
/// NotCoverable exactly when each grid's core point lies strictly inside q,
/// since such a point is an endpoint at every generation and no cell of that
/// grid can swallow it.
pub fn cover(q: &Query, g1: &GridRep, g2: &GridRep) -> Result<CoverResult> {
    if g1.base() != g2.base() {
        return Err(Error::BaseMismatch(g1.base().get(), g2.base().get()));
    }
    let width = q.width();
    let usable = [!blocked(g1, q), !blocked(g2, q)];
    if usable == [false, false] {
        return Err(Error::NotCoverable);
    }
    let mut m = start_generation(g1.base(), &width);
    loop {
        for (ok, g, source) in [(usable[0], g1, GridSource::First), (usable[1], g2, GridSource::Second)] {
            if !ok {
                continue;
            }
            let cell = g.cell_containing(q.left(), m);
            if cell.covers(q.left(), q.right()) {
                let ratio = cell.length() / &width;
                return Ok(CoverResult { interval: cell, source, ratio });
            }
        }
        m -= 1;
    }
}

/// Outcome of a randomized sweep of cover queries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EstimateSummary {
    pub trials: u64,
    pub covered: u64,
    pub skipped: u64,
    #[serde(with = "crate::serde_util::ratio_string_opt")]
    pub max_ratio: Option<Rational>,
    pub argmax_query: Option<Query>,
}

/// Samples cover queries against the pair and records the worst ratio seen.
/// Each trial draws from its own stream of a counter-based generator, so a
/// given (seed, trial index) always produces the same query no matter how
/// many trials run. Half the trials straddle a grid endpoint drawn from any
/// generation down to just below the scale range (uniform placement alone
/// almost never finds the worst queries), the rest land uniformly in
/// [-4, 4); widths are n^-m with m drawn from scales. Queries trapping both
/// core points are skipped.
pub fn cover_constant_estimate(
    g1: &GridRep,
    g2: &GridRep,
    trials: u64,
    seed: u64,
    scales: std::ops::RangeInclusive<i64>,
) -> Result<EstimateSummary> {
    if g1.base() != g2.base() {
        return Err(Error::BaseMismatch(g1.base().get(), g2.base().get()));
    }
    let base = g1.base();
    let mut covered = 0u64;
    let mut skipped = 0u64;
    let mut max_ratio: Option<Rational> = None;
    let mut argmax: Option<Query> = None;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        let m = rng.random_range(*scales.start()..=*scales.end());
        let len = base.pow(-m);
        let q = if trial % 2 == 0 {
            let g = if rng.random::<bool>() { g1 } else { g2 };
            let mc = rng.random_range(*scales.start() - 2..=m);
            let k = rng.random_range(-8i64..=8);
            let e = g.anchor(mc) + Rational::from_integer(BigInt::from(k)) * base.pow(-mc);
            let u = Rational::new(BigInt::from(rng.random_range(1i64..64)), BigInt::from(64));
            let left = &e - u * &len;
            Query::new(left.clone(), left + &len)?
        } else {
            let left = Rational::new(BigInt::from(rng.random_range(-(1i64 << 22)..(1i64 << 22))), BigInt::from(1i64 << 20));
            Query::new(left.clone(), left + &len)?
        };
        match cover(&q, g1, g2) {
            Ok(res) => {
                covered += 1;
                if max_ratio.as_ref().is_none_or(|b| res.ratio > *b) {
                    max_ratio = Some(res.ratio);
                    argmax = Some(q);
                }
            }
            Err(Error::NotCoverable) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(EstimateSummary { trials, covered, skipped, max_ratio, argmax_query: argmax })
}

/// Independent verifier for cover, restricted to one grid: walks generations
/// from the finest useful one down to m_floor (or further, when the query is
/// already wider than m_floor cells), enumerates every candidate cell near
/// the query directly from the endpoint formula anchor + k n^-m, and returns
/// the first cell that contains the query. None when no generation in the
/// scanned range covers it.
pub fn oracle_cover(q: &Query, g: &GridRep, m_floor: i64) -> Option<Interval> {
    let mut m = start_generation(g.base(), &q.width());
    let floor = m_floor.min(m);
    while m >= floor {
        let step = g.base().pow(-m);
        let e = g.anchor(m);
        let k_lo = ((q.left() - &e) / &step).floor().to_integer() - BigInt::one();
        let k_hi = ((q.right() - &e) / &step).ceil().to_integer() + BigInt::one();
        let mut k = k_lo;
        while k <= k_hi {
            let left = &e + Rational::from_integer(k.clone()) * &step;
            let cell = Interval::new(left, m, g.base());
            if cell.covers(q.left(), q.right()) {
                return Some(cell);
            }
            k += 1;
        }
        m -= 1;
    }
    None
}

/// A query certified to force a large cover ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub query: Query,
    pub m0: u32,
    #[serde(with = "crate::serde_util::bigint_string")]
    pub k0: BigInt,
    #[serde(with = "crate::serde_util::ratio_string")]
    pub target: Rational,
    pub cover: CoverResult,
}

fn round_nearest(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Builds a query whose cover ratio over (standard, G(delta, alternating))
/// exceeds n^strength. Only works when delta is not n-far: the scan finds a
/// scale m0 where delta sits within n^-(strength+1+m0) of a grid point
/// k0/n^m0, and a padded query around both points keeps them interior. Any
/// covering cell must then come from a generation coarser than both traps,
/// making its length at least n^(1-m0) against a query width below
/// n^-(strength+1+m0), so the achieved ratio is forced past n^(strength+2).
pub fn adversarial_witness(delta: &Rational, base: Base, strength: u32) -> Result<WitnessReport> {
    if is_n_far(delta, base) {
        return Err(Error::ShiftIsFar(format_rational(delta), base.get()));
    }
    let g1 = standard_grid(base);
    let g2 = translated_standard_grid(delta, base);
    let three = Rational::from_integer(BigInt::from(3));
    let mut m0 = 0u32;
    loop {
        let scale = base.pow(i64::from(m0));
        let k0 = round_nearest(&(delta * &scale));
        let p0 = Rational::from_integer(k0.clone()) / &scale;
        let gap = (delta - &p0).abs();
        let bound = base.pow(-(i64::from(strength) + 1 + i64::from(m0)));
        if gap < bound {
            let pad = if gap.is_zero() { &bound / &three } else { (&bound - &gap) / &three };
            let (lo, hi) = if delta <= &p0 { (delta.clone(), p0) } else { (p0, delta.clone()) };
            let q = Query::new(lo - &pad, hi + &pad)?;
            let res = cover(&q, &g1, &g2)?;
            let target = base.pow(i64::from(strength));
            debug_assert!(res.ratio > target);
            return Ok(WitnessReport { query: q, m0, k0, target, cover: res });
        }
        m0 += 1;
    }
}
