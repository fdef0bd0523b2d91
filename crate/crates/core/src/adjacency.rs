//! The adjacency decision procedure for pairs of grid representations.
//!
//! Two grids G(d1, a) and G(d2, b) in base n are adjacent exactly when the
//! shift gap d1 - d2 is n-far and the normalized endpoint discrepancy
//! D(j) = (L_a(j) - L_b(j)) / n^j stays bounded away from 0 and 1 in
//! absolute value as j grows. Every |D(j)| accumulates onto finitely many
//! rational limit points, one per residue class of j modulo the combined
//! period, and those limits decide the second condition exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::DigitSequence;
use crate::error::{Error, Result};
use crate::far::is_n_far;
use crate::grid::{standard_grid, translated_standard_grid, GridRep};
use crate::rational::{Base, Rational};

/// The limit points of |D(j)|, sorted ascending. c1 and c2 are the liminf
/// and limsup of the sequence, which the finitely many class limits realize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitProfile {
    limit_points: Vec<Rational>,
    c1: Rational,
    c2: Rational,
}

impl LimitProfile {
    pub fn limit_points(&self) -> &[Rational] {
        &self.limit_points
    }

    pub fn c1(&self) -> &Rational {
        &self.c1
    }

    pub fn c2(&self) -> &Rational {
        &self.c2
    }
}

/// Exact limit points of |D(j)|. With L the least common multiple of the two
/// period lengths, the digit difference at index i is eventually a function
/// of i mod L alone, and along each residue class r the recurrence
/// D(j + L) = D(j) / n^L + c_r contracts onto a single rational fixed point
/// with denominator dividing n^L - 1. Preperiod digits never affect the
/// limits, only how fast the class converges.
pub fn limit_profile(a: &DigitSequence, b: &DigitSequence) -> Result<LimitProfile> {
    if a.base() != b.base() {
        return Err(Error::BaseMismatch(a.base().get(), b.base().get()));
    }
    let n = BigInt::from(a.base().get());
    let l = a.period().len().lcm(&b.period().len());
    let settled = a.preperiod().len().max(b.preperiod().len()) as u64;

    // class digit differences, indexed by i mod L
    let mut diff = vec![0i64; l];
    for i in settled..settled + l as u64 {
        let s = (i % l as u64) as usize;
        diff[s] = i64::from(a.digit(i)) - i64::from(b.digit(i));
    }

    let denom = n.pow(u32::try_from(l).expect("period length fits u32")) - BigInt::one();
    let mut points: Vec<Rational> = (0..l)
        .map(|r| {
            let mut s = BigInt::zero();
            let mut power = BigInt::one();
            for v in 0..l {
                s += BigInt::from(diff[(r + v) % l]) * &power;
                power *= &n;
            }
            Rational::new(s, denom.clone()).abs()
        })
        .collect();
    points.sort();
    points.dedup();
    let c1 = points.first().expect("at least one residue class").clone();
    let c2 = points.last().expect("at least one residue class").clone();
    Ok(LimitProfile { limit_points: points, c1, c2 })
}

/// Which adjacency condition failed, checked in a fixed order: the shift gap
/// first, then the liminf, then the limsup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailingCondition {
    None,
    ShiftNotFar,
    LiminfZero,
    LimsupOne,
}

/// Full outcome of the adjacency decision for one ordered pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyReport {
    pub adjacent: bool,
    /// Shift of the second grid relative to the first.
    #[serde(with = "crate::serde_util::ratio_string")]
    pub shift_gap: Rational,
    pub shift_gap_far: bool,
    #[serde(with = "crate::serde_util::ratio_string")]
    pub c1: Rational,
    #[serde(with = "crate::serde_util::ratio_string")]
    pub c2: Rational,
    #[serde(with = "crate::serde_util::ratio_string_vec")]
    pub limit_points: Vec<Rational>,
    pub failing_condition: FailingCondition,
}

/// Decides adjacency of two same-base grid representations.
pub fn is_adjacent(g1: &GridRep, g2: &GridRep) -> Result<AdjacencyReport> {
    if g1.base() != g2.base() {
        return Err(Error::BaseMismatch(g1.base().get(), g2.base().get()));
    }
    let profile = limit_profile(g1.location(), g2.location())?;
    let shift_gap = g2.shift() - g1.shift();
    let shift_gap_far = is_n_far(&shift_gap, g1.base());
    let failing = if !shift_gap_far {
        FailingCondition::ShiftNotFar
    } else if profile.c1().is_zero() {
        FailingCondition::LiminfZero
    } else if profile.c2() >= &Rational::one() {
        FailingCondition::LimsupOne
    } else {
        FailingCondition::None
    };
    Ok(AdjacencyReport {
        adjacent: failing == FailingCondition::None,
        shift_gap,
        shift_gap_far,
        c1: profile.c1().clone(),
        c2: profile.c2().clone(),
        limit_points: profile.limit_points().to_vec(),
        failing_condition: failing,
    })
}

/// Adjacency of the standard grid with its delta-translate
/// G(delta, (1,0,1,0,...)), run through the full decision procedure. The
/// limit points here are always {1/(n^2-1), n/(n^2-1)}, both strictly inside
/// (0, 1), so the verdict reduces to whether delta is n-far.
pub fn is_adjacent_standard_translate(delta: &Rational, base: Base) -> Result<AdjacencyReport> {
    let g1 = standard_grid(base);
    let g2 = translated_standard_grid(delta, base);
    is_adjacent(&g1, &g2)
}

/// Smallest normalized gap between the endpoint sets of the standard grid and
/// its delta-translate: for each generation m in the range, every generation-m
/// endpoint of one grid inside the window is compared against the other
/// grid's, the distance is scaled by n^m to make it relative to the cell
/// length, and the minimum over all generations is returned. Coinciding
/// endpoints give 0, which happens exactly when delta is not n-far and the
/// range is deep enough; no error is raised for that. A window too narrow to
/// pair up endpoints at any generation in the range is reported as empty.
pub fn endpoint_separation(
    delta: &Rational,
    base: Base,
    m_range: std::ops::RangeInclusive<i64>,
    window: (&Rational, &Rational),
) -> Result<Rational> {
    let g1 = translated_standard_grid(delta, base);
    let g2 = standard_grid(base);
    grid_endpoint_separation(&g1, &g2, m_range, window)?.ok_or_else(|| {
        Error::EmptyInterval(
            crate::rational::format_rational(window.0),
            crate::rational::format_rational(window.1),
        )
    })
}

/// The same scan for an arbitrary same-base pair of grid representations.
/// None if no generation in the range put endpoints of both grids inside the
/// window.
pub fn grid_endpoint_separation(
    g1: &GridRep,
    g2: &GridRep,
    m_range: std::ops::RangeInclusive<i64>,
    window: (&Rational, &Rational),
) -> Result<Option<Rational>> {
    if g1.base() != g2.base() {
        return Err(Error::BaseMismatch(g1.base().get(), g2.base().get()));
    }
    let (lo, hi) = window;
    let mut best: Option<Rational> = None;
    for m in m_range {
        let p1 = g1.endpoints_in(m, lo, hi);
        let p2 = g2.endpoints_in(m, lo, hi);
        if p1.is_empty() || p2.is_empty() {
            continue;
        }
        let scale = g1.base().pow(m);
        let (mut i, mut j) = (0, 0);
        while i < p1.len() && j < p2.len() {
            let gap = (&p1[i] - &p2[j]).abs() * &scale;
            if best.as_ref().is_none_or(|b| gap < *b) {
                best = Some(gap);
            }
            if p1[i] <= p2[j] {
                i += 1;
            } else {
                j += 1;
            }
        }
    }
    Ok(best)
}

/// The same grid written with a different split between shift and location:
/// the shift gains the integer n, the location absorbs -n, and every
/// generation's endpoint set stays identical.
pub fn rerepresent(g: &GridRep, n: &BigInt) -> GridRep {
    GridRep::new(g.shift() + Rational::from_integer(n.clone()), g.location().add_integer(&(-n)))
}

/// How the limit profile of a re-represented pair relates to the original.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProfileRelation {
    Matched,
    Inverted,
}

/// Outcome of the re-representation experiment on an adjacent pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvarianceReport {
    pub original: (Rational, Rational),
    pub rerepresented: (Rational, Rational),
    pub relation: ProfileRelation,
}

/// Re-represents g1 by n1 and g2 by n2 and checks the limit profile
/// dichotomy: the new profile must equal the old one, or be its reflection
/// x -> 1 - x (so (c1, c2) becomes (1 - c2, 1 - c1)). Exact match is
/// preferred when the profile is symmetric and both descriptions hold.
/// Requires the original pair to be adjacent; any third outcome is an error
/// carrying both profiles.
pub fn representation_invariance(
    g1: &GridRep,
    g2: &GridRep,
    n1: &BigInt,
    n2: &BigInt,
) -> Result<InvarianceReport> {
    let before = is_adjacent(g1, g2)?;
    if !before.adjacent {
        return Err(Error::NotAdjacent);
    }
    let after = limit_profile(rerepresent(g1, n1).location(), rerepresent(g2, n2).location())?;

    let matched = after.limit_points() == before.limit_points.as_slice();
    let reflected: Vec<Rational> = before
        .limit_points
        .iter()
        .rev()
        .map(|x| Rational::one() - x)
        .collect();
    let inverted = after.limit_points() == reflected.as_slice();

    let relation = if matched {
        ProfileRelation::Matched
    } else if inverted {
        ProfileRelation::Inverted
    } else {
        return Err(Error::ProfileDichotomy(
            crate::rational::format_rational(&before.c1),
            crate::rational::format_rational(&before.c2),
            crate::rational::format_rational(after.c1()),
            crate::rational::format_rational(after.c2()),
        ));
    };
    Ok(InvarianceReport {
        original: (before.c1, before.c2),
        rerepresented: (after.c1().clone(), after.c2().clone()),
        relation,
    })
}
