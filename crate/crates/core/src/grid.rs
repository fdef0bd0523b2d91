//! Grid representations: a rational shift plus a digit-sequence address.
//!
//! G(delta, a) partitions the line at every generation m. Cells have length
//! n^-m (larger m = finer) and left endpoints e + k n^-m, where the anchor e
//! is delta itself for m >= 0 and delta + L_a(-m) for m < 0: the digits of a
//! choose, generation by generation, which coarser cell absorbs the previous
//! one, and the location value accumulates those choices.

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::digits::DigitSequence;
use crate::error::{Error, Result};
use crate::rational::{frac_floor, Base, Rational};

/// A half-open cell [left, left + n^-generation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    left: Rational,
    generation: i64,
    base: Base,
}

impl Interval {
    pub fn new(left: Rational, generation: i64, base: Base) -> Interval {
        Interval { left, generation, base }
    }

    pub fn left(&self) -> &Rational {
        &self.left
    }

    pub fn generation(&self) -> i64 {
        self.generation
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn length(&self) -> Rational {
        self.base.pow(-self.generation)
    }

    pub fn right(&self) -> Rational {
        &self.left + self.length()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        x >= &self.left && x < &self.right()
    }

    /// Whether [lo, hi) fits inside this cell.
    pub fn covers(&self, lo: &Rational, hi: &Rational) -> bool {
        &self.left <= lo && hi <= &self.right()
    }
}

#[derive(Serialize, Deserialize)]
struct IntervalWire {
    #[serde(with = "crate::serde_util::ratio_string")]
    left: Rational,
    generation: i64,
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IntervalWire { left: self.left.clone(), generation: self.generation }.serialize(s)
    }
}

/// One representation G(shift, location) of a grid. Different pairs can
/// describe the same geometric grid; `canonicalize` picks the one whose shift
/// lies in [0, 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridRep {
    shift: Rational,
    location: DigitSequence,
}

impl GridRep {
    pub fn new(shift: Rational, location: DigitSequence) -> GridRep {
        GridRep { shift, location }
    }

    pub fn base(&self) -> Base {
        self.location.base()
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn location(&self) -> &DigitSequence {
        &self.location
    }

    /// Left endpoint of the k = 0 cell at generation m.
    pub fn anchor(&self, m: i64) -> Rational {
        if m >= 0 {
            self.shift.clone()
        } else {
            &self.shift + Rational::from_integer(self.location.location_value(m.unsigned_abs()))
        }
    }

    /// The generation-m cell containing x.
    pub fn cell_containing(&self, x: &Rational, m: i64) -> Interval {
        let step = self.base().pow(-m);
        let e = self.anchor(m);
        let k = ((x - &e) / &step).floor();
        Interval::new(e + k * step, m, self.base())
    }

    /// All generation-m endpoints inside [lo, hi], in increasing order.
    pub fn endpoints_in(&self, m: i64, lo: &Rational, hi: &Rational) -> Vec<Rational> {
        let step = self.base().pow(-m);
        let e = self.anchor(m);
        let k_lo = ((lo - &e) / &step).ceil().to_integer();
        let k_hi = ((hi - &e) / &step).floor().to_integer();
        let mut k = k_lo;
        let mut out = Vec::new();
        while k <= k_hi {
            out.push(&e + Rational::from_integer(k.clone()) * &step);
            k += 1;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GridWire {
    base: u32,
    #[serde(with = "crate::serde_util::ratio_string")]
    shift: Rational,
    location: String,
}

impl Serialize for GridRep {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GridWire {
            base: self.base().get(),
            shift: self.shift.clone(),
            location: self.location.literal(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GridRep {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = GridWire::deserialize(d)?;
        let base = Base::new(w.base).map_err(D::Error::custom)?;
        let location = DigitSequence::parse(base, &w.location).map_err(D::Error::custom)?;
        Ok(GridRep::new(w.shift, location))
    }
}

/// The plain base-n grid: shift 0, all-zero location.
pub fn standard_grid(base: Base) -> GridRep {
    GridRep::new(Rational::zero(), DigitSequence::zeros(base))
}

/// The standard grid translated by delta, with the alternating location
/// (1, 0, 1, 0, ...), whose location values the closed forms below match.
pub fn translated_standard_grid(delta: &Rational, base: Base) -> GridRep {
    GridRep::new(delta.clone(), DigitSequence::alternating(base))
}

/// Closed forms for the coarse-generation offsets of the alternating
/// location: for m < 0 the anchor offset is (n^-m - 1)/(n^2 - 1) at even m
/// and (n^(1-m) - 1)/(n^2 - 1) at odd m. Rejects m >= 0, where no offset
/// applies.
pub fn offset_closed_forms(m: i64, base: Base) -> Result<Rational> {
    if m >= 0 {
        return Err(Error::NonNegativeGeneration(m));
    }
    let n2 = base.pow(2) - Rational::one();
    let num = if m % 2 == 0 { base.pow(-m) } else { base.pow(1 - m) };
    Ok((num - Rational::one()) / n2)
}

/// Re-representation with the shift reduced to [0, 1): the integer part of
/// the shift moves into the location n-adically, leaving every endpoint set
/// unchanged.
pub fn canonicalize(g: &GridRep) -> GridRep {
    let (f, fl) = frac_floor(g.shift());
    if fl.is_zero() {
        return g.clone();
    }
    GridRep::new(f, g.location().add_integer(&fl))
}

/// Whether two representations describe the same grid, decided by comparing
/// canonical forms componentwise.
pub fn reps_equal(g1: &GridRep, g2: &GridRep) -> Result<bool> {
    if g1.base() != g2.base() {
        return Err(Error::BaseMismatch(g1.base().get(), g2.base().get()));
    }
    let c1 = canonicalize(g1);
    let c2 = canonicalize(g2);
    Ok(c1.shift() == c2.shift() && c1.location() == c2.location())
}

/// How many cells `verify_grid_axioms` will walk per generation before
/// falling back to probe points only.
const WALK_CAP: usize = 4096;

/// Checks the grid axioms for g across a window: every generation tiles the
/// window with abutting cells of length exactly n^-m, each generation's
/// lattice refines the next coarser one, and cell lookup is consistent with
/// the tiling. Returns false at the first violation.
pub fn verify_grid_axioms(
    g: &GridRep,
    m_range: std::ops::RangeInclusive<i64>,
    window: (&Rational, &Rational),
) -> bool {
    let (lo, hi) = window;
    if lo >= hi {
        return false;
    }
    let two = Rational::from_integer(2.into());
    let three = Rational::from_integer(3.into());
    let mut probes = vec![
        lo.clone(),
        (lo + hi) / &two,
        (lo + lo + hi) / &three,
        (lo + hi + hi) / &three,
        hi.clone(),
    ];
    if lo <= &Rational::zero() && &Rational::zero() < hi {
        probes.push(Rational::zero());
    }
    for m in m_range.clone() {
        let step = g.base().pow(-m);
        let mut cell = g.cell_containing(lo, m);
        if !cell.contains(lo) || cell.length() != step {
            return false;
        }
        let mut walked = 0usize;
        while cell.left() < hi && walked < WALK_CAP {
            let next = g.cell_containing(&cell.right(), m);
            if next.left() != &cell.right() || next.length() != step {
                return false;
            }
            cell = next;
            walked += 1;
        }
        for x in &probes {
            if !g.cell_containing(x, m).contains(x) {
                return false;
            }
        }
    }
    let (&m_lo, &m_hi) = (m_range.start(), m_range.end());
    for m in m_lo..m_hi {
        let fine_step = g.base().pow(-(m + 1));
        if !((g.anchor(m) - g.anchor(m + 1)) / &fine_step).is_integer() {
            return false;
        }
        for x in &probes {
            let coarse = g.cell_containing(x, m);
            let fine = g.cell_containing(x, m + 1);
            if !coarse.covers(fine.left(), &fine.right()) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn b(n: u32) -> Base {
        Base::new(n).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(BigInt::from(p), BigInt::from(q))
    }

    #[test]
    fn interval_geometry() {
        let c = Interval::new(r(1, 4), 2, b(2));
        assert_eq!(c.length(), r(1, 4));
        assert_eq!(c.right(), r(1, 2));
        assert!(c.contains(&r(1, 3)));
        assert!(!c.contains(&r(1, 2)));
        assert!(c.covers(&r(1, 4), &r(3, 8)));
        assert!(!c.covers(&r(1, 4), &r(5, 8)));
    }

    #[test]
    fn standard_cells() {
        let g = standard_grid(b(2));
        let c = g.cell_containing(&r(1, 3), 2);
        assert_eq!((c.left().clone(), c.right()), (r(1, 4), r(1, 2)));
        let g3 = standard_grid(b(3));
        let c = g3.cell_containing(&r(5, 1), -1);
        assert_eq!((c.left().clone(), c.right()), (r(3, 1), r(6, 1)));
    }

    #[test]
    fn translated_cells_at_fine_generations() {
        let g = translated_standard_grid(&r(1, 3), b(2));
        let c = g.cell_containing(&r(1, 3), 0);
        assert_eq!((c.left().clone(), c.right()), (r(1, 3), r(4, 3)));
    }

    #[test]
    fn coarse_anchor_uses_the_location_offset() {
        // generation -1 of the alternating location sits at delta + 1 + 2k
        let g = translated_standard_grid(&r(1, 6), b(2));
        let c = g.cell_containing(&r(0, 1), -1);
        assert_eq!((c.left().clone(), c.right()), (r(-5, 6), r(7, 6)));
        // generation -2 of the same location keeps offset 1: cells at delta + 1 + 4k
        let g0 = translated_standard_grid(&r(0, 1), b(2));
        let c = g0.cell_containing(&r(0, 1), -2);
        assert_eq!((c.left().clone(), c.right()), (r(-3, 1), r(1, 1)));
    }

    #[test]
    fn zero_location_grid_keeps_the_shift_at_every_scale() {
        // with an all-zero location the shift itself stays an endpoint at
        // every coarse generation: cells at 1/6 + 2k for generation -1
        let g = GridRep::new(r(1, 6), DigitSequence::zeros(b(2)));
        let c = g.cell_containing(&r(0, 1), -1);
        assert_eq!((c.left().clone(), c.right()), (r(-11, 6), r(1, 6)));
        let right_cell = g.cell_containing(&r(1, 6), -1);
        assert_eq!((right_cell.left().clone(), right_cell.right()), (r(1, 6), r(13, 6)));
    }

    #[test]
    fn offset_closed_forms_match_location_values() {
        assert_eq!(offset_closed_forms(-2, b(2)).unwrap(), r(1, 1));
        assert_eq!(offset_closed_forms(-3, b(2)).unwrap(), r(5, 1));
        assert_eq!(offset_closed_forms(-4, b(3)).unwrap(), r(10, 1));
        assert!(offset_closed_forms(0, b(2)).is_err());
        for n in [2u32, 3, 5] {
            let a = DigitSequence::alternating(b(n));
            for m in -12i64..0 {
                let want = Rational::from_integer(a.location_value(m.unsigned_abs()));
                assert_eq!(offset_closed_forms(m, b(n)).unwrap(), want, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn endpoints_enumeration() {
        let g = translated_standard_grid(&r(1, 3), b(2));
        let pts = g.endpoints_in(0, &r(-2, 1), &r(2, 1));
        assert_eq!(pts, vec![r(-5, 3), r(-2, 3), r(1, 3), r(4, 3)]);
    }

    #[test]
    fn shift_integer_part_moves_into_the_location() {
        for n in [2u32, 3, 5] {
            let unit = DigitSequence::new(b(n), vec![1], vec![0]).unwrap();
            let top = DigitSequence::new(b(n), vec![], vec![n - 1]).unwrap();
            let g1 = GridRep::new(r(0, 1), unit);
            let g2 = GridRep::new(r(2, 1), top);
            assert!(reps_equal(&g1, &g2).unwrap(), "base {n}");
        }
    }

    #[test]
    fn canonical_form_preserves_endpoints() {
        let g = GridRep::new(r(-1, 3), DigitSequence::zeros(b(2)));
        let c = canonicalize(&g);
        assert_eq!(c.shift(), &r(2, 3));
        for m in -5i64..=5 {
            let step = b(2).pow(-m);
            assert!(((g.anchor(m) - c.anchor(m)) / step).is_integer(), "m = {m}");
        }
    }

    #[test]
    fn same_shift_different_locations_differ() {
        let g1 = GridRep::new(r(0, 1), DigitSequence::alternating(b(2)));
        let g2 = standard_grid(b(2));
        assert!(!reps_equal(&g1, &g2).unwrap());
        assert!(reps_equal(&g1, &g1.clone()).unwrap());
    }

    #[test]
    fn reps_equal_rejects_mixed_bases() {
        let g1 = standard_grid(b(2));
        let g2 = standard_grid(b(3));
        assert!(matches!(reps_equal(&g1, &g2), Err(Error::BaseMismatch(2, 3))));
    }

    #[test]
    fn axioms_hold_for_assorted_grids() {
        let lo = r(-5, 1);
        let hi = r(5, 1);
        let grids = [
            standard_grid(b(2)),
            translated_standard_grid(&r(1, 3), b(2)),
            translated_standard_grid(&r(1, 6), b(5)),
            GridRep::new(r(-7, 4), DigitSequence::new(b(3), vec![2, 0], vec![1, 2]).unwrap()),
        ];
        for g in &grids {
            assert!(verify_grid_axioms(g, -4..=4, (&lo, &hi)));
        }
    }

    #[test]
    fn grid_json_round_trip() {
        let g = translated_standard_grid(&r(1, 3), b(2));
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, r#"{"base":2,"shift":"1/3","location":":1,0"}"#);
        let back: GridRep = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn interval_json_shape() {
        let c = Interval::new(r(1, 4), 2, b(2));
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"left":"1/4","generation":2}"#);
    }
}
