//! Shared generators and independent brute-force oracles for the
//! integration suites. Everything here recomputes values from definitions,
//! deliberately avoiding the library's own shortcuts, so agreement between
//! the two is evidence rather than tautology.
#![allow(dead_code)]

use dyadic_grids::{
    cover, oracle_cover, Base, BaseNExpansion, DigitSequence, Error, GridRep, GridSource,
    Interval, Query, Rational,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn b(n: u32) -> Base {
    Base::new(n).unwrap()
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with 1 <= q <= max_q and 0 <= value < span.
pub fn random_rational(rng: &mut ChaCha8Rng, max_q: i64, span: i64) -> Rational {
    let q = rng.random_range(1..=max_q);
    let p = rng.random_range(0..span * q);
    r(p, q)
}

/// Eventually periodic location with a short preperiod and period.
pub fn random_location(rng: &mut ChaCha8Rng, base: Base) -> DigitSequence {
    let n = base.get();
    let pre_len = rng.random_range(0..=3usize);
    let per_len = rng.random_range(1..=4usize);
    let pre: Vec<u32> = (0..pre_len).map(|_| rng.random_range(0..n)).collect();
    let per: Vec<u32> = (0..per_len).map(|_| rng.random_range(0..n)).collect();
    DigitSequence::new(base, pre, per).unwrap()
}

pub fn random_grid(rng: &mut ChaCha8Rng, base: Base) -> GridRep {
    let q = rng.random_range(1..=40i64);
    let p = rng.random_range(-5 * q..5 * q);
    GridRep::new(r(p, q), random_location(rng, base))
}

/// Distance from x to the nearest integer, from the definition.
pub fn dist_to_z(x: &Rational) -> Rational {
    let f = x - Rational::from_integer(x.floor().to_integer());
    let up = Rational::one() - &f;
    if f <= up {
        f
    } else {
        up
    }
}

/// Fractional part in [0, 1).
pub fn frac(x: &Rational) -> Rational {
    x - Rational::from_integer(x.floor().to_integer())
}

/// d(x) by scanning the definition directly: min over 0 <= m <= m_max of
/// dist(n^m x, Z). A finite scan can only overshoot the true infimum, never
/// undershoot it.
pub fn oracle_d_scan(x: &Rational, base: Base, m_max: i64) -> Rational {
    (0..=m_max)
        .map(|m| dist_to_z(&(x * base.pow(m))))
        .min()
        .expect("nonempty scan")
}

/// Exact d(x) for rational x: the orbit of the fractional numerator under
/// multiplication by n mod q has at most q states, so visiting q + 1 of them
/// sees every value dist(n^m x, Z) ever takes.
pub fn oracle_d_full(x: &Rational, base: Base) -> Rational {
    let f = frac(x);
    let q = f.denom().clone();
    let n = BigInt::from(base.get());
    let steps = u64::try_from(&q).expect("oracle wants a small denominator") + 1;
    let mut p = f.numer().clone();
    let mut best = p.clone().min(&q - &p);
    for _ in 0..steps {
        p = (&p * &n) % &q;
        let d = p.clone().min(&q - &p);
        if d < best {
            best = d;
        }
    }
    Rational::new(best, q)
}

/// Number of distinct states in that orbit, preperiod included. If this is
/// at most m_max + 1, a scan over m <= m_max is already exhaustive.
pub fn orbit_length(x: &Rational, base: Base) -> u64 {
    let f = frac(x);
    let q = f.denom().clone();
    let n = BigInt::from(base.get());
    let mut seen = std::collections::HashSet::new();
    let mut p = f.numer().clone();
    while seen.insert(p.clone()) {
        p = (&p * &n) % &q;
    }
    seen.len() as u64
}

/// The admissible distance at one scale: min over allowed k of |n^m x - k|,
/// where k = 0 is forbidden for m < 0. The candidate set holds the two
/// integers bracketing n^m x plus both sign-adjacent fallbacks, which always
/// contains the admissible minimizer.
fn scale_term(x: &Rational, base: Base, m: i64) -> Rational {
    let y = x * base.pow(m);
    let fl = y.floor().to_integer();
    let mut ks = vec![fl.clone(), &fl + 1];
    if m < 0 {
        ks.retain(|k| !k.is_zero());
        ks.push(BigInt::one());
        ks.push(-BigInt::one());
    }
    ks.into_iter()
        .map(|k| (&y - Rational::from_integer(k)).abs())
        .min()
        .expect("candidates never empty")
}

/// C(x) by scanning scales m in [-m_scan, m_scan]. An upper bound in general.
pub fn oracle_c_scan(x: &Rational, base: Base, m_scan: i64) -> Rational {
    (-m_scan..=m_scan)
        .map(|m| scale_term(x, base, m))
        .min()
        .expect("nonempty scan")
}

/// Exact C(x): the nonnegative scales come from the full orbit, and the
/// negative scales stop once n^{-m} >= 2|x|, past which the admissible
/// distance is 1 - n^m |x| and only grows as m falls further.
pub fn oracle_c_full(x: &Rational, base: Base) -> Rational {
    let mut best = oracle_d_full(x, base);
    let two_abs = x.abs() * Rational::from_integer(BigInt::from(2));
    let mut m = -1i64;
    loop {
        let term = scale_term(x, base, m);
        if term < best {
            best = term;
        }
        if base.pow(-m) >= two_abs {
            return best;
        }
        m -= 1;
    }
}

/// Evaluates an expansion as the geometric series it denotes: the preperiod
/// digits term by term, then the periodic block over n^L - 1 at the right
/// offset.
pub fn series_value(e: &BaseNExpansion) -> Rational {
    let n = BigInt::from(e.base().get());
    let mut head = Rational::zero();
    let mut power = Rational::one();
    let nr = Rational::from_integer(n.clone());
    for &d in e.preperiod() {
        power /= &nr;
        head += Rational::from_integer(BigInt::from(d)) * &power;
    }
    let l = e.period().len() as u32;
    let mut block = BigInt::zero();
    for &d in e.period() {
        block = block * &n + BigInt::from(d);
    }
    let tail = Rational::new(block, n.pow(l) - BigInt::one()) * &power;
    head + tail
}

/// True when q's prime factors all divide n, i.e. the fraction p/q is some
/// k/n^m. A reduced fractional part with a foreign prime factor expands into
/// a nonterminating periodic word whose ties are bounded, so for rationals
/// this decides farness from scratch.
pub fn denominator_is_base_smooth(x: &Rational, base: Base) -> bool {
    let mut d = frac(x).denom().clone();
    let n = BigInt::from(base.get());
    loop {
        let g = d.gcd(&n);
        if g.is_one() {
            return d.is_one();
        }
        while (&d % &g).is_zero() {
            d /= &g;
        }
    }
}

/// Checks one cover answer against the brute-force per-grid oracles:
/// soundness (the cell contains the query and lies on the reporting grid's
/// endpoint lattice), minimality (no finer generation of either grid covers),
/// and the first-grid tie rule. A NotCoverable verdict is checked by running
/// both oracles with a floor far below the query scale.
pub fn assert_cover_matches_oracle(q: &Query, g1: &GridRep, g2: &GridRep) {
    match cover(q, g1, g2) {
        Ok(res) => {
            let cell = &res.interval;
            assert!(
                cell.covers(q.left(), q.right()),
                "cover result does not contain the query"
            );
            let owner = if res.source == GridSource::First { g1 } else { g2 };
            let step = owner.base().pow(-cell.generation());
            assert!(
                ((cell.left() - owner.anchor(cell.generation())) / &step).is_integer(),
                "cover result is not on the reporting grid's lattice"
            );
            assert_eq!(&cell.length() / q.width(), res.ratio, "ratio is not |I|/|Q|");

            let floor = cell.generation();
            let o1 = oracle_cover(q, g1, floor);
            let o2 = oracle_cover(q, g2, floor);
            let gen = |o: &Option<Interval>| o.as_ref().map(Interval::generation);
            let finest = gen(&o1).max(gen(&o2)).expect("a found cover must be oracle-visible");
            assert_eq!(
                cell.generation(),
                finest,
                "a strictly finer covering generation exists"
            );
            let (want, source) = if gen(&o1) == Some(finest) {
                (o1.unwrap(), GridSource::First)
            } else {
                (o2.unwrap(), GridSource::Second)
            };
            assert_eq!(cell.left(), want.left(), "cover disagrees with the oracle cell");
            assert_eq!(res.source, source, "tie must break to the first grid");
        }
        Err(Error::NotCoverable) => {
            assert_eq!(oracle_cover(q, g1, -45), None, "oracle covers a NotCoverable query");
            assert_eq!(oracle_cover(q, g2, -45), None, "oracle covers a NotCoverable query");
        }
        Err(e) => panic!("cover failed unexpectedly: {e}"),
    }
}
