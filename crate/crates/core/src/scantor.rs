//! S-Cantor sets `C(l, r, p)`: base-`p` sets keeping the `l` lowest and `r`
//! highest digits, and the five-way topological classification of
//! `C(l1, r1, p) - C(l2, r2, p)`.

use std::fmt;

use serde::Serialize;

use crate::digitset::DigitSet;
use crate::error::{Error, Result};
use crate::numerics::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SCantorParams {
    l: i64,
    r: i64,
    p: i64,
}

impl SCantorParams {
    pub fn new(l: i64, r: i64, p: i64) -> Result<Self> {
        if l < 1 || r < 1 || p <= 2 || l + r >= p {
            return Err(Error::InvalidSCantorParams { l, r, p });
        }
        Ok(SCantorParams { l, r, p })
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn p(&self) -> i64 {
        self.p
    }
}

impl fmt::Display for SCantorParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{})", self.l, self.r, self.p)
    }
}

/// The five inequalities on `(l1, r1, l2, r2, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SConditions {
    pub s1: bool,
    pub s2: bool,
    pub s3: bool,
    pub s1_star: bool,
    pub s2_star: bool,
}

impl SConditions {
    /// Which of the five classification clauses hold, in order:
    /// full interval, Cantor set, L-, R-, M-Cantorval.
    pub fn clauses(&self) -> [bool; 5] {
        let full = self.s1 && self.s2;
        [
            full,
            self.s3,
            self.s1_star && !self.s2,
            self.s2_star && !self.s1,
            !self.s1_star && !self.s2_star && !self.s3 && !full,
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TopologyClass {
    FullInterval,
    CantorSet,
    LCantorval,
    RCantorval,
    MCantorval,
}

impl TopologyClass {
    pub const ALL: [TopologyClass; 5] = [
        TopologyClass::FullInterval,
        TopologyClass::CantorSet,
        TopologyClass::LCantorval,
        TopologyClass::RCantorval,
        TopologyClass::MCantorval,
    ];

    /// Class of the negated set: L and R swap.
    pub fn mirror(self) -> Self {
        match self {
            TopologyClass::LCantorval => TopologyClass::RCantorval,
            TopologyClass::RCantorval => TopologyClass::LCantorval,
            other => other,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TopologyClass::FullInterval => "FullInterval",
            TopologyClass::CantorSet => "CantorSet",
            TopologyClass::LCantorval => "LCantorval",
            TopologyClass::RCantorval => "RCantorval",
            TopologyClass::MCantorval => "MCantorval",
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Integer range `<lo, hi>`, empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Self {
        IntRange { lo, hi }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as usize
        }
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn shift(&self, by: i64) -> Self {
        IntRange::new(self.lo + by, self.hi + by)
    }

    pub fn intersect(&self, other: &IntRange) -> Self {
        IntRange::new(self.lo.max(other.lo), self.hi.min(other.hi))
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "<{},{}>", self.lo, self.hi)
        }
    }
}

impl Serialize for IntRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

fn same_p(a: &SCantorParams, b: &SCantorParams) -> Result<i64> {
    if a.p != b.p {
        return Err(Error::BaseMismatch(a.p, b.p));
    }
    Ok(a.p)
}

/// `<0, l-1> u <p-r, p-1>` in base `p`.
pub fn digit_set_of(params: &SCantorParams) -> DigitSet {
    let SCantorParams { l, r, p } = *params;
    DigitSet::new(p, (0..l).chain(p - r..p)).expect("valid parameters give a nonempty set")
}

pub fn conditions(p1: &SCantorParams, p2: &SCantorParams) -> Result<SConditions> {
    let p = same_p(p1, p2)?;
    let (l1, r1, l2, r2) = (p1.l, p1.r, p2.l, p2.r);
    let left = [l1 + l2 + r2, l1 + r1 + r2];
    let right = [l1 + r1 + l2, r1 + l2 + r2];
    Ok(SConditions {
        s1: left.iter().any(|&v| v >= p),
        s2: right.iter().any(|&v| v >= p),
        s3: l1 + r1 + l2 + r2 <= p,
        s1_star: left.iter().any(|&v| v > p),
        s2_star: right.iter().any(|&v| v > p),
    })
}

/// Topological type of `C(l1, r1, p) - C(l2, r2, p)`.
///
/// Panics if the clauses are not mutually exclusive and exhaustive, which
/// would mean one of the inequalities is wrong.
pub fn classify(p1: &SCantorParams, p2: &SCantorParams) -> Result<TopologyClass> {
    let clauses = conditions(p1, p2)?.clauses();
    let fired: Vec<usize> = (0..5).filter(|&i| clauses[i]).collect();
    assert_eq!(
        fired.len(),
        1,
        "classification clauses {fired:?} fired for {p1} - {p2}"
    );
    Ok(TopologyClass::ALL[fired[0]])
}

/// Type of `C(l, r, p) - C(l, r, p)`: never an L- or R-Cantorval.
pub fn classify_self(params: &SCantorParams) -> TopologyClass {
    let SCantorParams { l, r, p } = *params;
    if 2 * l + r >= p || l + 2 * r >= p {
        TopologyClass::FullInterval
    } else if 2 * l + 2 * r <= p {
        TopologyClass::CantorSet
    } else {
        TopologyClass::MCantorval
    }
}

fn symmetric_params(l: i64, p: i64) -> Result<SCantorParams> {
    if p <= 2 || l < 1 || 2 * l >= p {
        return Err(Error::Precondition(format!(
            "symmetric S-Cantor set needs p > 2 and 1 <= l with 2l < p, got l={l}, p={p}"
        )));
    }
    SCantorParams::new(l, l, p)
}

/// Type of `C(l1, l1, p) - C(l2, l2, p)`.
pub fn classify_symmetric(l1: i64, l2: i64, p: i64) -> Result<TopologyClass> {
    symmetric_params(l1, p)?;
    symmetric_params(l2, p)?;
    Ok(if 2 * l1 + l2 >= p || l1 + 2 * l2 >= p {
        TopologyClass::FullInterval
    } else if 2 * l1 + 2 * l2 <= p {
        TopologyClass::CantorSet
    } else {
        TopologyClass::MCantorval
    })
}

/// Type of `C(l, l, p) - C(l, l, p)` from the ratio `l/p` alone:
/// at least `1/3` full, at most `1/4` Cantor, in between M-Cantorval.
pub fn kraft_threshold(l: i64, p: i64) -> Result<TopologyClass> {
    symmetric_params(l, p)?;
    let ratio = rat(l, p);
    Ok(if ratio >= rat(1, 3) {
        TopologyClass::FullInterval
    } else if ratio <= rat(1, 4) {
        TopologyClass::CantorSet
    } else {
        TopologyClass::MCantorval
    })
}

/// Digit ranges missing from `A(l1,r1,p) - A(l2,r2,p)` inside
/// `<-p+1, p-1>`: `L = <l1+r2-p, min(-l2,-r1)>`, `R = <max(l1,r2), p-r1-l2>`.
pub fn lr_sets(p1: &SCantorParams, p2: &SCantorParams) -> Result<(IntRange, IntRange)> {
    let p = same_p(p1, p2)?;
    let (l1, r1, l2, r2) = (p1.l, p1.r, p2.l, p2.r);
    Ok((
        IntRange::new(l1 + r2 - p, (-l2).min(-r1)),
        IntRange::new(l1.max(r2), p - r1 - l2),
    ))
}

/// Every pair of valid parameter sets with `3 <= p <= p_max`, ordered
/// lexicographically by `(l1, r1, l2, r2, p)`.
pub fn all_pairs(p_max: i64) -> Vec<(SCantorParams, SCantorParams)> {
    let mut out = Vec::new();
    for p in 3..=p_max {
        let singles: Vec<SCantorParams> = (1..p)
            .flat_map(|l| (1..p - l).map(move |r| SCantorParams { l, r, p }))
            .collect();
        for a in &singles {
            for b in &singles {
                out.push((*a, *b));
            }
        }
    }
    out.sort_by_key(|(a, b)| (a.l, a.r, b.l, b.r, a.p));
    out
}

/// `sum over p of ((p-1)(p-2)/2)^2`, the length of [`all_pairs`].
pub fn pair_count(p_max: i64) -> usize {
    (3..=p_max)
        .map(|p| {
            let n = (p - 1) * (p - 2) / 2;
            (n * n) as usize
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digitset::ds_diff;

    fn sp(l: i64, r: i64, p: i64) -> SCantorParams {
        SCantorParams::new(l, r, p).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(SCantorParams::new(0, 1, 4).is_err());
        assert!(SCantorParams::new(1, 0, 4).is_err());
        assert!(SCantorParams::new(1, 1, 2).is_err());
        assert!(SCantorParams::new(2, 2, 4).is_err());
        assert!(SCantorParams::new(1, 2, 4).is_ok());
    }

    #[test]
    fn digit_set_examples() {
        assert_eq!(digit_set_of(&sp(1, 1, 3)).to_string(), "p=3:{0,2}");
        assert_eq!(digit_set_of(&sp(2, 2, 7)).to_string(), "p=7:{0,1,5,6}");
        assert_eq!(digit_set_of(&sp(3, 2, 7)).to_string(), "p=7:{0,1,2,5,6}");
    }

    #[test]
    fn condition_examples() {
        let c = conditions(&sp(1, 1, 4), &sp(2, 1, 4)).unwrap();
        assert!(c.s1 && c.s2);
        let c = conditions(&sp(3, 2, 7), &sp(1, 3, 7)).unwrap();
        assert!(c.s1_star && !c.s2);
        let c = conditions(&sp(2, 2, 7), &sp(2, 2, 7)).unwrap();
        assert!(!c.s3 && !c.s1 && !c.s2);
        assert_eq!(conditions(&sp(1, 1, 3), &sp(1, 1, 4)), Err(Error::BaseMismatch(3, 4)));
    }

    #[test]
    fn classify_examples() {
        use TopologyClass::*;
        assert_eq!(classify(&sp(1, 1, 4), &sp(2, 1, 4)).unwrap(), FullInterval);
        assert_eq!(classify(&sp(3, 2, 7), &sp(1, 3, 7)).unwrap(), LCantorval);
        assert_eq!(classify(&sp(1, 3, 7), &sp(3, 2, 7)).unwrap(), RCantorval);
        assert_eq!(classify(&sp(2, 2, 7), &sp(2, 2, 7)).unwrap(), MCantorval);
        assert_eq!(classify(&sp(1, 1, 4), &sp(1, 1, 4)).unwrap(), CantorSet);
    }

    #[test]
    fn self_and_symmetric_examples() {
        use TopologyClass::*;
        assert_eq!(classify_self(&sp(2, 2, 7)), MCantorval);
        assert_eq!(classify_self(&sp(1, 1, 3)), FullInterval);
        assert_eq!(classify_self(&sp(1, 1, 4)), CantorSet);
        assert_eq!(classify_symmetric(2, 1, 5).unwrap(), FullInterval);
        assert_eq!(kraft_threshold(1, 5).unwrap(), CantorSet);
        assert_eq!(kraft_threshold(2, 7).unwrap(), MCantorval);
        assert_eq!(kraft_threshold(2, 5).unwrap(), FullInterval);
        assert!(kraft_threshold(2, 4).is_err());
        assert!(classify_symmetric(1, 3, 5).is_err());
    }

    #[test]
    fn lr_examples() {
        let (l, r) = lr_sets(&sp(3, 2, 7), &sp(1, 3, 7)).unwrap();
        assert!(l.is_empty());
        assert_eq!(r.iter().collect::<Vec<_>>(), [3, 4]);
        let (l, r) = lr_sets(&sp(2, 2, 7), &sp(2, 2, 7)).unwrap();
        assert_eq!(l.iter().collect::<Vec<_>>(), [-3, -2]);
        assert_eq!(r.iter().collect::<Vec<_>>(), [2, 3]);
        let (l, r) = lr_sets(&sp(1, 1, 3), &sp(1, 1, 3)).unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("<-1,-1>".into(), "<1,1>".into()));
    }

    #[test]
    fn exhaustive_clause_and_lr_identities() {
        for (a, b) in all_pairs(12) {
            let c = conditions(&a, &b).unwrap();
            assert_eq!(c.clauses().iter().filter(|&&x| x).count(), 1);
            assert!(!c.s1_star || c.s1);
            assert!(!c.s2_star || c.s2);
            assert!(!c.s3 || (!c.s1 && !c.s2));
            assert_eq!(classify(&a, &b).unwrap(), classify(&b, &a).unwrap().mirror());

            let (l, r) = lr_sets(&a, &b).unwrap();
            assert_eq!(c.s1, l.len() <= 1);
            assert_eq!(c.s1_star, l.is_empty());
            assert_eq!(c.s2, r.len() <= 1);
            assert_eq!(c.s2_star, r.is_empty());
            assert_eq!(c.s3, !r.intersect(&l.shift(a.p())).is_empty());

            let diff = ds_diff(&digit_set_of(&a), &digit_set_of(&b)).unwrap();
            let expected: Vec<i64> = (1 - a.p()..a.p())
                .filter(|&d| !l.contains(d) && !r.contains(d))
                .collect();
            assert_eq!(diff.digits(), expected.as_slice(), "{a} - {b}");
        }
    }

    #[test]
    fn exhaustive_specializations() {
        for (a, b) in all_pairs(12) {
            if a != b {
                continue;
            }
            let full = classify(&a, &a).unwrap();
            assert_eq!(full, classify_self(&a));
            if a.l() == a.r() {
                assert_eq!(full, kraft_threshold(a.l(), a.p()).unwrap());
            }
        }
        for p in 3..=12 {
            for l1 in (1..p).filter(|l| 2 * l < p) {
                for l2 in (1..p).filter(|l| 2 * l < p) {
                    assert_eq!(
                        classify_symmetric(l1, l2, p).unwrap(),
                        classify(&sp(l1, l1, p), &sp(l2, l2, p)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn pair_enumeration() {
        let pairs = all_pairs(7);
        assert_eq!(pairs.len(), pair_count(7));
        assert!(pairs.windows(2).all(|w| {
            let k = |(a, b): &(SCantorParams, SCantorParams)| (a.l, a.r, b.l, b.r, a.p);
            k(&w[0]) < k(&w[1])
        }));
        assert_eq!(pair_count(4), 1 + 9);
    }
}
