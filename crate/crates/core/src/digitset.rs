//! Finite digit sets `A` in base `p` and the self-similar sets
//! `A_p = { sum x_i p^-i : x_i in A }`.
//!
//! Sums, differences and integer scalings of digit sets act on `A_p`
//! homomorphically, so set arithmetic on `A_p` reduces to integer set
//! arithmetic on digits.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{int, Rational};

/// Sorted, deduplicated digits with a base.
///
/// Digits may be any integers; the usual bound `<-p+1, p-1>` is checked by
/// [`DigitSet::require_bounded`] where an operation depends on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitSet {
    base: i64,
    digits: Vec<i64>,
}

impl DigitSet {
    pub fn new<I: IntoIterator<Item = i64>>(base: i64, digits: I) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        let mut digits: Vec<i64> = digits.into_iter().collect();
        if digits.is_empty() {
            return Err(Error::EmptyDigitSet);
        }
        digits.sort_unstable();
        digits.dedup();
        Ok(DigitSet { base, digits })
    }

    /// Like [`DigitSet::new`] but every digit must lie in `<-p+1, p-1>`.
    pub fn bounded<I: IntoIterator<Item = i64>>(base: i64, digits: I) -> Result<Self> {
        let d = Self::new(base, digits)?;
        d.require_bounded()?;
        Ok(d)
    }

    /// `<0, p-1>`, whose set is `[0, 1]`.
    pub fn full(base: i64) -> Result<Self> {
        Self::new(base, 0..base)
    }

    /// `<-p+1, p-1>`, whose set is `[-1, 1]`.
    pub fn full_symmetric(base: i64) -> Result<Self> {
        Self::new(base, 1 - base..base)
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.digits[0]
    }

    pub fn max(&self) -> i64 {
        self.digits[self.digits.len() - 1]
    }

    pub fn contains(&self, d: i64) -> bool {
        self.digits.binary_search(&d).is_ok()
    }

    /// Digits outside `<-p+1, p-1>`.
    pub fn out_of_range(&self) -> Vec<i64> {
        let b = self.base;
        self.digits.iter().copied().filter(|d| d.abs() >= b).collect()
    }

    pub fn require_bounded(&self) -> Result<()> {
        match self.out_of_range().first() {
            None => Ok(()),
            Some(&digit) => Err(Error::DigitOutOfRange {
                digit,
                lo: 1 - self.base,
                hi: self.base - 1,
                base: self.base,
            }),
        }
    }

    /// `[min/(p-1), max/(p-1)]`, the hull of `A_p`.
    pub fn hull(&self) -> (Rational, Rational) {
        let q = int(self.base - 1);
        (int(self.min()) / &q, int(self.max()) / q)
    }

    pub fn stats(&self) -> Result<DigitStats> {
        if self.digits.len() < 2 {
            return Err(Error::SingletonDigitSet);
        }
        let diam = self.max() - self.min();
        let delta = self
            .digits
            .windows(2)
            .map(|w| w[1] - w[0])
            .max()
            .expect("at least two digits");
        Ok(DigitStats {
            diam,
            delta,
            ratio: Rational::new(delta.into(), (delta + diam).into()),
        })
    }

    /// `A_p` is an interval iff `1/p >= I(A)`. A single digit gives a point
    /// and is reported as `false`.
    pub fn is_interval(&self) -> bool {
        match self.stats() {
            Ok(s) => Rational::new(1.into(), self.base.into()) >= s.ratio,
            Err(_) => false,
        }
    }
}

/// `diam = max - min`, `delta` the largest gap between consecutive digits,
/// `ratio = delta / (delta + diam)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DigitStats {
    pub diam: i64,
    pub delta: i64,
    #[serde(serialize_with = "crate::numerics::serialize_rational")]
    pub ratio: Rational,
}

fn same_base(a: &DigitSet, b: &DigitSet) -> Result<i64> {
    if a.base != b.base {
        return Err(Error::BaseMismatch(a.base, b.base));
    }
    Ok(a.base)
}

/// `A + B`; its set is `A_p + B_p`.
pub fn ds_sum(a: &DigitSet, b: &DigitSet) -> Result<DigitSet> {
    let p = same_base(a, b)?;
    DigitSet::new(p, a.digits.iter().flat_map(|x| b.digits.iter().map(move |y| x + y)))
}

/// `A - B`; its set is `A_p - B_p`.
pub fn ds_diff(a: &DigitSet, b: &DigitSet) -> Result<DigitSet> {
    let p = same_base(a, b)?;
    DigitSet::new(p, a.digits.iter().flat_map(|x| b.digits.iter().map(move |y| x - y)))
}

/// `k A`; its set is `k A_p`.
pub fn ds_scale(k: i64, a: &DigitSet) -> DigitSet {
    DigitSet::new(a.base, a.digits.iter().map(|x| k * x)).expect("nonempty with valid base")
}

/// `A_p - B_p = [-1, 1]` iff the largest gap of `A - B` is at most 2.
/// Both sets must lie in `<0, p-1>` and contain `0` and `p - 1`.
pub fn is_full_difference(a: &DigitSet, b: &DigitSet) -> Result<bool> {
    let p = same_base(a, b)?;
    for s in [a, b] {
        if s.min() != 0 || s.max() != p - 1 {
            return Err(Error::Precondition(format!(
                "{s} must lie in <0, {}> and contain 0 and {}",
                p - 1,
                p - 1
            )));
        }
    }
    Ok(ds_diff(a, b)?.stats()?.delta <= 2)
}

impl fmt::Display for DigitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.digits.iter().map(i64::to_string).collect();
        write!(f, "p={}:{{{}}}", self.base, body.join(","))
    }
}

impl FromStr for DigitSet {
    type Err = Error;

    /// Parses `p=7:{-6,-5,-4,-1,0,1,4,5,6}`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("digit set literal {s:?}; expected p=<base>:{{d1,d2,...}}"));
        let s = s.trim();
        let rest = s.strip_prefix("p=").ok_or_else(bad)?;
        let (base, body) = rest.split_once(':').ok_or_else(bad)?;
        let base: i64 = base.trim().parse().map_err(|_| bad())?;
        let body = body
            .trim()
            .strip_prefix('{')
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(bad)?;
        let digits = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        DigitSet::new(base, digits)
    }
}

impl Serialize for DigitSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DigitSet", 2)?;
        st.serialize_field("base", &self.base)?;
        st.serialize_field("digits", &self.digits)?;
        st.end()
    }
}
