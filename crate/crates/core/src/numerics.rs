//! Exact scalars, closed intervals and canonical unions of closed intervals.
//!
//! Everything here is exact: [`Rational`] is an arbitrary precision fraction
//! and no operation rounds. An [`IntervalUnion`] is always kept in canonical
//! form (sorted, pairwise separated, touching parts merged), so two unions
//! describe the same point set iff they compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Exact rational number in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// `num / den` as a canonical [`Rational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"a/b"` or `"a"` (surrounding whitespace allowed).
/// Least common multiple of the denominators, `1` for no values.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
    }
}

/// Serde helper that writes a rational as its canonical `"a/b"` string.
pub fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Closed interval `[lo, hi]`; a single point when `lo == hi`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvertedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// Left endpoint `l(I)`.
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    /// Right endpoint `r(I)`.
    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Closed intervals meet (sharing an endpoint counts).
    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// `{ x - y : x in self, y in other }`.
    pub fn minus(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn translate(&self, by: &Rational) -> Interval {
        Interval {
            lo: &self.lo + by,
            hi: &self.hi + by,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Interval", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

/// Open interval `(lo, hi)` with `lo < hi`; used for gaps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gap {
    lo: Rational,
    hi: Rational,
}

impl Gap {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvertedInterval {
                lo: lo.to_string(),
                hi: hi.to_string(),
            });
        }
        Ok(Gap { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn len(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x < &self.hi
    }

    /// Whether the open gap shares a point with the closed interval.
    pub fn meets(&self, i: &Interval) -> bool {
        i.lo() < &self.hi && &self.lo < i.hi()
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl Serialize for Gap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Gap", 2)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.end()
    }
}

/// Finite union of closed intervals in canonical form.
///
/// Parts are sorted and strictly separated (`hi_i < lo_{i+1}`); overlapping
/// or touching inputs are merged on construction.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalUnion {
    parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn single(i: Interval) -> Self {
        IntervalUnion { parts: vec![i] }
    }

    /// Canonical merged form of an arbitrary collection of closed intervals.
    pub fn normalize<I: IntoIterator<Item = Interval>>(raw: I) -> Self {
        let mut raw: Vec<Interval> = raw.into_iter().collect();
        raw.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut parts: Vec<Interval> = Vec::with_capacity(raw.len());
        for i in raw {
            match parts.last_mut() {
                Some(last) if i.lo <= last.hi => {
                    if i.hi > last.hi {
                        last.hi = i.hi;
                    }
                }
                _ => parts.push(i),
            }
        }
        IntervalUnion { parts }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Interval> {
        self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of connected components.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_connected(&self) -> bool {
        self.parts.len() == 1
    }

    /// Total Lebesgue measure, exact.
    pub fn measure(&self) -> Rational {
        self.parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.len())
    }

    /// Smallest closed interval containing the union.
    pub fn hull(&self) -> Option<Interval> {
        let first = self.parts.first()?;
        let last = self.parts.last()?;
        Some(Interval {
            lo: first.lo.clone(),
            hi: last.hi.clone(),
        })
    }

    /// Index of the part containing `x`, if any.
    fn part_index(&self, x: &Rational) -> Option<usize> {
        let idx = self.parts.partition_point(|p| &p.hi < x);
        self.parts
            .get(idx)
            .filter(|p| p.contains(x))
            .map(|_| idx)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.part_index(x).is_some()
    }

    /// A closed interval lies in the union iff it lies in a single component.
    pub fn contains_interval(&self, i: &Interval) -> bool {
        self.part_index(i.lo())
            .is_some_and(|idx| self.parts[idx].contains(i.hi()))
    }

    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts.iter().all(|p| other.contains_interval(p))
    }

    /// Whether the open gap shares any point with the union.
    pub fn meets_gap(&self, g: &Gap) -> bool {
        let idx = self.parts.partition_point(|p| p.hi() <= g.lo());
        self.parts.get(idx).is_some_and(|p| g.meets(p))
    }

    /// Bounded open components of the complement, in order.
    pub fn gaps(&self) -> Result<Vec<Gap>> {
        if self.parts.is_empty() {
            return Err(Error::EmptyUnion);
        }
        Ok(self
            .parts
            .windows(2)
            .map(|w| Gap {
                lo: w[0].hi.clone(),
                hi: w[1].lo.clone(),
            })
            .collect())
    }

    /// `{ x - y : x in self, y in other }`, computed pairwise on parts over a
    /// common denominator.
    pub fn minkowski_diff(&self, other: &IntervalUnion) -> IntervalUnion {
        let den = common_denominator(
            self.parts
                .iter()
                .chain(other.parts.iter())
                .flat_map(|p| [&p.lo, &p.hi]),
        );
        let scale = |x: &Rational| x.numer() * (&den / x.denom());
        let left: Vec<(BigInt, BigInt)> = self.parts.iter().map(|p| (scale(&p.lo), scale(&p.hi))).collect();
        let right: Vec<(BigInt, BigInt)> = other.parts.iter().map(|p| (scale(&p.lo), scale(&p.hi))).collect();
        let pairs = left
            .iter()
            .flat_map(|x| right.iter().map(move |y| (&x.0 - &y.1, &x.1 - &y.0)))
            .collect();
        IntervalUnion::from_scaled(pairs, &den)
    }

    /// Union of `[lo / den, hi / den]` over integer pairs, merged before any
    /// rational is formed.
    pub fn from_scaled(mut pieces: Vec<(BigInt, BigInt)>, den: &BigInt) -> Self {
        pieces.sort_unstable();
        let mut merged: Vec<(BigInt, BigInt)> = Vec::with_capacity(pieces.len());
        for (lo, hi) in pieces {
            assert!(lo <= hi, "scaled piece out of order");
            match merged.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        IntervalUnion {
            parts: merged
                .into_iter()
                .map(|(lo, hi)| Interval {
                    lo: Rational::new(lo, den.clone()),
                    hi: Rational::new(hi, den.clone()),
                })
                .collect(),
        }
    }

    /// `{ -x : x in self }`.
    pub fn reflect(&self) -> IntervalUnion {
        IntervalUnion {
            parts: self
                .parts
                .iter()
                .rev()
                .map(|p| Interval {
                    lo: -p.hi.clone(),
                    hi: -p.lo.clone(),
                })
                .collect(),
        }
    }

    /// Whether this union is exactly the closed interval `[lo, hi]`.
    pub fn is_interval(&self, lo: &Rational, hi: &Rational) -> bool {
        matches!(self.parts.as_slice(), [p] if &p.lo == lo && &p.hi == hi)
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("]")
    }
}

impl Serialize for IntervalUnion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(lo: Rational, hi: Rational) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn u(parts: &[(Rational, Rational)]) -> IntervalUnion {
        IntervalUnion::normalize(parts.iter().cloned().map(|(a, b)| iv(a, b)))
    }

    #[test]
    fn touching_intervals_merge() {
        let x = u(&[(int(0), int(1)), (int(1), int(2))]);
        assert_eq!(x.parts(), &[iv(int(0), int(2))]);
    }

    #[test]
    fn disjoint_intervals_are_kept() {
        let x = u(&[(int(0), rat(1, 4)), (rat(1, 2), int(1))]);
        assert_eq!(x.len(), 2);
        assert_eq!(x.to_string(), "[[0,1/4],[1/2,1]]");
    }

    #[test]
    fn overlap_merges_and_singleton_survives() {
        let x = u(&[
            (int(-1), rat(-1, 2)),
            (rat(-3, 4), int(0)),
            (rat(1, 4), rat(1, 4)),
        ]);
        assert_eq!(x.to_string(), "[[-1,0],[1/4,1/4]]");
    }

    #[test]
    fn inverted_interval_rejected() {
        assert!(Interval::new(int(1), int(0)).is_err());
    }

    #[test]
    fn unit_minus_unit() {
        let x = u(&[(int(0), int(1))]);
        assert!(x.minkowski_diff(&x).is_interval(&int(-1), &int(1)));
    }

    #[test]
    fn quarter_ends_difference() {
        // pairwise: [0,1/4]-[0,1/4], [0,1/4]-[3/4,1], [3/4,1]-[0,1/4], [3/4,1]-[3/4,1]
        let x = u(&[(int(0), rat(1, 4)), (rat(3, 4), int(1))]);
        let d = x.minkowski_diff(&x);
        assert_eq!(d.to_string(), "[[-1,-1/2],[-1/4,1/4],[1/2,1]]");
    }

    #[test]
    fn point_minus_interval_reflects() {
        let zero = u(&[(int(0), int(0))]);
        let ab = u(&[(rat(1, 3), rat(5, 7))]);
        assert_eq!(zero.minkowski_diff(&ab), ab.reflect());
        assert_eq!(zero.minkowski_diff(&ab).to_string(), "[[-5/7,-1/3]]");
    }

    #[test]
    fn gaps_between_parts() {
        let x = u(&[(int(0), rat(1, 4)), (rat(1, 2), int(1))]);
        assert_eq!(x.gaps().unwrap(), vec![Gap::new(rat(1, 4), rat(1, 2)).unwrap()]);
        assert!(u(&[(int(-1), int(1))]).gaps().unwrap().is_empty());
        let c = u(&[(int(0), rat(1, 9)), (rat(2, 9), rat(1, 3)), (rat(2, 3), int(1))]);
        let g: Vec<String> = c.gaps().unwrap().iter().map(|g| g.to_string()).collect();
        assert_eq!(g, ["(1/9,2/9)", "(1/3,2/3)"]);
        assert_eq!(IntervalUnion::empty().gaps(), Err(Error::EmptyUnion));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rational(" 6/8 ").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-5").unwrap(), int(-5));
        assert_eq!(rat(4, 2).to_string(), "2");
        assert_eq!(rat(-2, 6).to_string(), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn subset_and_containment() {
        let big = u(&[(int(0), int(2)), (int(3), int(4))]);
        let small = u(&[(rat(1, 2), int(1)), (int(3), int(3))]);
        assert!(small.is_subset_of(&big));
        assert!(!big.is_subset_of(&small));
        assert!(!big.contains_interval(&iv(int(1), int(3))));
        assert!(big.meets_gap(&Gap::new(rat(5, 2), rat(7, 2)).unwrap()));
        assert!(!big.meets_gap(&Gap::new(int(2), int(3)).unwrap()));
    }

    fn small_interval() -> impl Strategy<Value = Interval> {
        (-20i64..20, 0i64..8, 1i64..5).prop_map(|(a, w, d)| iv(rat(a, d), rat(a + w, d)))
    }

    proptest! {
        #[test]
        fn normalize_idempotent_and_order_free(mut raw in prop::collection::vec(small_interval(), 0..8)) {
            let once = IntervalUnion::normalize(raw.clone());
            let twice = IntervalUnion::normalize(once.parts().to_vec());
            prop_assert_eq!(&once, &twice);
            raw.reverse();
            prop_assert_eq!(&once, &IntervalUnion::normalize(raw.clone()));
            for w in once.parts().windows(2) {
                prop_assert!(w[0].hi() < w[1].lo());
            }
        }

        #[test]
        fn minkowski_diff_membership(
            a in prop::collection::vec(small_interval(), 1..4),
            b in prop::collection::vec(small_interval(), 1..4),
            xn in -60i64..60,
        ) {
            let ua = IntervalUnion::normalize(a.clone());
            let ub = IntervalUnion::normalize(b.clone());
            let d = ua.minkowski_diff(&ub);
            let x = rat(xn, 4);
            let brute = a.iter().any(|i| b.iter().any(|j| i.minus(j).contains(&x)));
            prop_assert_eq!(d.contains(&x), brute);
            let widest = a.iter()
                .flat_map(|i| b.iter().map(move |j| i.minus(j).len()))
                .max()
                .unwrap();
            prop_assert!(d.measure() >= widest);
        }

        #[test]
        fn gaps_avoid_union(raw in prop::collection::vec(small_interval(), 1..8)) {
            let x = IntervalUnion::normalize(raw);
            let gaps = x.gaps().unwrap();
            for (i, g) in gaps.iter().enumerate() {
                prop_assert!(!x.meets_gap(g));
                if let Some(next) = gaps.get(i + 1) {
                    prop_assert!(g.hi() <= next.lo());
                }
            }
        }
    }
}
