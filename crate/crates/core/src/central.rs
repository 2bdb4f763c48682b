//! Central Cantor sets `C(a)` and the algebraic difference `C(a) - C(b)`.
//!
//! `C(a)` is built from `[0, 1]` by repeatedly removing, from every interval
//! of the current level, a concentric open interval whose relative length at
//! step `n` is `a_n`. After `n` steps there are `2^n` intervals of length
//! `d_n = prod (1 - a_i) / 2`. For a second set `C(b)` the same product is
//! written `g_n`.
//!
//! The difference of the depth-`n` approximations is the union of the `4^n`
//! intervals `J_s = I_p^a - I_q^b`, indexed by signatures `s` over
//! `{0, 1, 2, 3}`. [`classify`] decides the two interval conditions
//! ([`condition_star`], [`condition_star_star`]) for every `n` when both
//! ratio sequences are eventually periodic and turns them into a verdict.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{common_denominator, int, parse_rational, Interval, IntervalUnion, Rational};

/// Default number of cycle periods searched for a condition crossover.
pub const DEFAULT_DEPTH_BUDGET: u64 = 64;

/// Eventually periodic sequence `a_1, a_2, ...` of rationals in `(0, 1)`.
///
/// Terms come from `prefix` first and then repeat `cycle`. An empty cycle
/// makes the spec finite: only the prefix terms are defined.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceSpec {
    prefix: Vec<Rational>,
    cycle: Vec<Rational>,
}

impl SequenceSpec {
    pub fn new(prefix: Vec<Rational>, cycle: Vec<Rational>) -> Result<Self> {
        if prefix.is_empty() && cycle.is_empty() {
            return Err(Error::EmptySequence);
        }
        let zero = Rational::zero();
        let one = Rational::one();
        for (i, t) in prefix.iter().chain(cycle.iter()).enumerate() {
            if *t <= zero || *t >= one {
                return Err(Error::TermOutOfRange {
                    index: i + 1,
                    value: t.to_string(),
                });
            }
        }
        Ok(SequenceSpec { prefix, cycle })
    }

    pub fn periodic(cycle: Vec<Rational>) -> Result<Self> {
        Self::new(Vec::new(), cycle)
    }

    pub fn finite(prefix: Vec<Rational>) -> Result<Self> {
        Self::new(prefix, Vec::new())
    }

    /// Parses `"prefix;cycle"`, each side a comma separated list of
    /// rationals, e.g. `"1/2,1/4;"` or `";1/3"`. Without a `;` the whole
    /// string is a finite prefix.
    pub fn parse(s: &str) -> Result<Self> {
        let list = |part: &str| -> Result<Vec<Rational>> {
            part.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(parse_rational)
                .collect()
        };
        let (prefix, cycle) = match s.split_once(';') {
            Some((p, c)) => (list(p)?, list(c)?),
            None => (list(s)?, Vec::new()),
        };
        Self::new(prefix, cycle)
    }

    pub fn prefix(&self) -> &[Rational] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[Rational] {
        &self.cycle
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Number of defined terms, `None` for an infinite (periodic) spec.
    pub fn available_terms(&self) -> Option<usize> {
        self.is_finite().then_some(self.prefix.len())
    }

    /// Term `a_n`, 1-based.
    pub fn term(&self, n: usize) -> Option<&Rational> {
        if n == 0 {
            return None;
        }
        if n <= self.prefix.len() {
            return Some(&self.prefix[n - 1]);
        }
        if self.cycle.is_empty() {
            return None;
        }
        let k = (n - self.prefix.len() - 1) % self.cycle.len();
        Some(&self.cycle[k])
    }

    /// Every distinct value the sequence takes (prefix and cycle).
    pub fn values(&self) -> impl Iterator<Item = &Rational> {
        self.prefix.iter().chain(self.cycle.iter())
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.prefix), join(&self.cycle))
    }
}

/// A central Cantor set with its interval lengths `d_n` precomputed over the
/// prefix and one cycle; later lengths follow from the cycle product.
#[derive(Clone, Debug)]
pub struct CentralCantor {
    seq: SequenceSpec,
    head: Vec<Rational>,
    cycle_factor: Option<Rational>,
}

impl CentralCantor {
    pub fn new(seq: SequenceSpec) -> Self {
        let mut head = vec![Rational::one()];
        let span = seq.prefix.len() + seq.cycle.len();
        for n in 1..=span {
            let next = head[n - 1].clone() * halved_complement(seq.term(n).expect("term in span"));
            head.push(next);
        }
        let cycle_factor = (!seq.cycle.is_empty()).then(|| {
            seq.cycle
                .iter()
                .fold(Rational::one(), |acc, t| acc * halved_complement(t))
        });
        CentralCantor {
            seq,
            head,
            cycle_factor,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        SequenceSpec::parse(s).map(Self::new)
    }

    pub fn seq(&self) -> &SequenceSpec {
        &self.seq
    }

    /// `a_n` or a depth error for finite specs.
    pub fn term(&self, n: usize) -> Result<&Rational> {
        self.seq.term(n).ok_or(Error::DepthExceedsSpec {
            requested: n,
            available: self.seq.prefix.len(),
        })
    }

    /// Length `d_n` of every level-`n` interval; `d_0 = 1`.
    pub fn d(&self, n: usize) -> Result<Rational> {
        if let Some(v) = self.head.get(n) {
            return Ok(v.clone());
        }
        let Some(c) = &self.cycle_factor else {
            return Err(Error::DepthExceedsSpec {
                requested: n,
                available: self.seq.prefix.len(),
            });
        };
        let pre = self.seq.prefix.len();
        let len = self.seq.cycle.len();
        let k = (n - pre) / len;
        let r = (n - pre) % len;
        Ok(self.head[pre + r].clone() * pow(c, k as u64))
    }

    /// Level-`n` interval `I_t` for the address `t` in `{0,1}^n`.
    pub fn cell(&self, address: &[u8]) -> Result<Interval> {
        let mut lo = Rational::zero();
        for (i, &bit) in address.iter().enumerate() {
            if bit == 1 {
                lo += self.d(i)? - self.d(i + 1)?;
            }
        }
        let hi = &lo + self.d(address.len())?;
        Interval::new(lo, hi)
    }

    /// `C_n(a)`: the `2^n` disjoint intervals of length `d_n`.
    pub fn approximation(&self, n: usize) -> Result<IntervalUnion> {
        let d = (0..=n).map(|k| self.d(k)).collect::<Result<Vec<_>>>()?;
        let den = common_denominator(d.iter());
        let d: Vec<BigInt> = d.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        let mut lefts = vec![BigInt::zero()];
        for i in 0..n {
            let shift = &d[i] - &d[i + 1];
            lefts = lefts
                .into_iter()
                .flat_map(|l| {
                    let r = &l + &shift;
                    [l, r]
                })
                .collect();
        }
        let pieces = lefts
            .into_iter()
            .map(|l| {
                let hi = &l + &d[n];
                (l, hi)
            })
            .collect();
        Ok(IntervalUnion::from_scaled(pieces, &den))
    }

    /// Newhouse thickness `inf (1 - a_n) / (2 a_n)`; for an eventually
    /// periodic spec the infimum is a minimum over prefix and cycle.
    pub fn thickness(&self) -> Rational {
        self.seq
            .values()
            .map(|a| (Rational::one() - a) / (int(2) * a))
            .min()
            .expect("sequence spec is nonempty")
    }
}

fn halved_complement(t: &Rational) -> Rational {
    (Rational::one() - t) / int(2)
}

fn pow(base: &Rational, mut exp: u64) -> Rational {
    let mut acc = Rational::one();
    let mut sq = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &sq;
        }
        exp >>= 1;
        if exp > 0 {
            sq = &sq * &sq;
        }
    }
    acc
}

/// Signature `s` in `{0,1,2,3}^n` naming `J_s = I_p^a - I_q^b` with
/// `s_i = 2 p_i - q_i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JSignature(Vec<u8>);

impl JSignature {
    pub fn new(digits: Vec<u8>) -> Result<Self> {
        if let Some(&bad) = digits.iter().find(|&&d| d > 3) {
            return Err(Error::InvalidSignatureDigit(bad));
        }
        Ok(JSignature(digits))
    }

    pub fn empty() -> Self {
        JSignature(Vec::new())
    }

    /// Encodes an address pair `(p, q)` of equal length.
    pub fn from_pair(p: &[u8], q: &[u8]) -> Result<Self> {
        if p.len() != q.len() || p.iter().chain(q).any(|&b| b > 1) {
            return Err(Error::Precondition(
                "address pair must be two equal-length 0/1 words".into(),
            ));
        }
        Ok(JSignature(
            p.iter().zip(q).map(|(&pi, &qi)| 2 * pi + 1 - qi).collect(),
        ))
    }

    /// Decodes back to the address pair `(p, q)`.
    pub fn to_pair(&self) -> (Vec<u8>, Vec<u8>) {
        self.0
            .iter()
            .map(|&s| {
                let p = u8::from(s >= 2);
                (p, 2 * p + 1 - s)
            })
            .unzip()
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// All signatures of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = JSignature> {
        (0..4usize.pow(n as u32)).map(move |mut code| {
            let mut digits = vec![0u8; n];
            for slot in digits.iter_mut().rev() {
                *slot = (code % 4) as u8;
                code /= 4;
            }
            JSignature(digits)
        })
    }
}

impl fmt::Display for JSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Child `J_{s^child}` of `J_s` where `|s| = n`.
fn j_child(a: &CentralCantor, b: &CentralCantor, parent: &Interval, n: usize, child: u8) -> Result<Interval> {
    let (dn, gn) = (a.d(n)?, b.d(n)?);
    let (dn1, gn1) = (a.d(n + 1)?, b.d(n + 1)?);
    let (l, r) = (parent.lo(), parent.hi());
    let (lo, hi) = match child {
        0 => (l.clone(), l + &dn1 + &gn1),
        1 => (l + &gn - &gn1, r - &dn + &dn1),
        2 => (l + &dn - &dn1, r - &gn + &gn1),
        3 => (r - &dn1 - &gn1, r.clone()),
        other => return Err(Error::InvalidSignatureDigit(other)),
    };
    Interval::new(lo, hi)
}

/// `J_s` through the four child rules, starting from `J_∅ = [-1, 1]`.
pub fn j_interval(a: &CentralCantor, b: &CentralCantor, s: &JSignature) -> Result<Interval> {
    let mut j = Interval::new(int(-1), int(1))?;
    for (n, &digit) in s.digits().iter().enumerate() {
        j = j_child(a, b, &j, n, digit)?;
    }
    Ok(j)
}

/// `d_k` and `g_k` for `k <= n` as numerators over one common denominator,
/// so the interval recursion runs on integers.
struct ScaledLengths {
    den: BigInt,
    d: Vec<BigInt>,
    g: Vec<BigInt>,
}

impl ScaledLengths {
    fn new(a: &CentralCantor, b: &CentralCantor, n: usize) -> Result<Self> {
        let d = (0..=n).map(|k| a.d(k)).collect::<Result<Vec<_>>>()?;
        let g = (0..=n).map(|k| b.d(k)).collect::<Result<Vec<_>>>()?;
        let den = common_denominator(d.iter().chain(g.iter()));
        let scale = |v: &Rational| v.numer() * (&den / v.denom());
        Ok(ScaledLengths {
            d: d.iter().map(scale).collect(),
            g: g.iter().map(scale).collect(),
            den,
        })
    }

    fn root(&self) -> (BigInt, BigInt) {
        (-self.den.clone(), self.den.clone())
    }

    /// Integer form of the four child rules.
    fn child(&self, (l, r): &(BigInt, BigInt), n: usize, child: u8) -> (BigInt, BigInt) {
        let (dn, gn, dn1, gn1) = (&self.d[n], &self.g[n], &self.d[n + 1], &self.g[n + 1]);
        match child {
            0 => (l.clone(), l + dn1 + gn1),
            1 => (l + gn - gn1, r - dn + dn1),
            2 => (l + dn - dn1, r - gn + gn1),
            _ => (r - dn1 - gn1, r.clone()),
        }
    }

    fn interval(&self, (l, r): &(BigInt, BigInt)) -> Interval {
        Interval::new(Rational::new(l.clone(), self.den.clone()), Rational::new(r.clone(), self.den.clone()))
            .expect("child rules keep endpoints ordered")
    }
}

/// Every `J_s` at depth `n`, in lexicographic signature order.
pub fn j_intervals(a: &CentralCantor, b: &CentralCantor, n: usize) -> Result<Vec<(JSignature, Interval)>> {
    let s = ScaledLengths::new(a, b, n)?;
    let mut level = vec![(Vec::new(), s.root())];
    for depth in 0..n {
        let mut next = Vec::with_capacity(level.len() * 4);
        for (sig, j) in &level {
            for child in 0..4u8 {
                let mut digits: Vec<u8> = sig.clone();
                digits.push(child);
                next.push((digits, s.child(j, depth, child)));
            }
        }
        level = next;
    }
    Ok(level
        .into_iter()
        .map(|(sig, j)| (JSignature(sig), s.interval(&j)))
        .collect())
}

/// `C_n(a) - C_n(b)` as the union of all `J_s`, `|s| = n`.
///
/// Children depend only on the parent interval and the depth, so equal
/// intervals are collapsed level by level.
pub fn difference_at_depth(a: &CentralCantor, b: &CentralCantor, n: usize) -> Result<IntervalUnion> {
    let s = ScaledLengths::new(a, b, n)?;
    let mut level = vec![s.root()];
    for depth in 0..n {
        let mut next = Vec::with_capacity(level.len() * 4);
        for j in &level {
            for child in 0..4u8 {
                next.push(s.child(j, depth, child));
            }
        }
        next.sort_unstable();
        next.dedup();
        level = next;
    }
    Ok(IntervalUnion::from_scaled(level, &s.den))
}

/// `tau(C(a)) * tau(C(b)) >= 1`. Sufficient for `C(a) - C(b) = [-1, 1]`,
/// never a negative result.
pub fn newhouse_test(a: &CentralCantor, b: &CentralCantor) -> bool {
    a.thickness() * b.thickness() >= Rational::one()
}

/// `(*)` at `n`: `g_{n+1} / d_n >= a_{n+1}` or `d_{n+1} / g_n >= b_{n+1}`.
pub fn condition_star(a: &CentralCantor, b: &CentralCantor, n: usize) -> Result<bool> {
    let (a1, b1) = (a.term(n + 1)?, b.term(n + 1)?);
    Ok(b.d(n + 1)? >= a1 * a.d(n)? || a.d(n + 1)? >= b1 * b.d(n)?)
}

/// `(**)` at `n`: `d_n / g_n >= b_{n+1}` and `g_n / d_n >= a_{n+1}`.
pub fn condition_star_star(a: &CentralCantor, b: &CentralCantor, n: usize) -> Result<bool> {
    let (a1, b1) = (a.term(n + 1)?, b.term(n + 1)?);
    let (dn, gn) = (a.d(n)?, b.d(n)?);
    Ok(dn >= b1 * &gn && gn >= a1 * &dn)
}

/// Both conditions rewritten in terms of `rho = d_n / g_n` and the next
/// terms. Along a residue class of a periodic tail only `rho` changes.
#[derive(Clone, Debug)]
struct RhoThresholds {
    /// `(*)` holds iff `rho <= star_low` or `rho >= star_high`.
    star_low: Rational,
    star_high: Rational,
    /// `(**)` holds iff `pair_low <= rho <= pair_high`.
    pair_low: Rational,
    pair_high: Rational,
}

impl RhoThresholds {
    fn new(a1: &Rational, b1: &Rational) -> Self {
        let one = Rational::one();
        RhoThresholds {
            star_low: (&one - b1) / (int(2) * a1),
            star_high: int(2) * b1 / (&one - a1),
            pair_low: b1.clone(),
            pair_high: one / a1,
        }
    }

    fn star(&self, rho: &Rational) -> bool {
        rho <= &self.star_low || rho >= &self.star_high
    }

    fn star_star(&self, rho: &Rational) -> bool {
        &self.pair_low <= rho && rho <= &self.pair_high
    }
}

/// Where `(*)` fails along `rho_k = rho_0 c^k`, `c != 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum StarFailure {
    Never,
    At(u64),
    /// A failure provably exists past the search budget.
    Beyond,
    /// The search budget ran out before the crossover was located.
    Unknown,
}

/// Locates the first `k` with `rho_0 c^k` strictly inside the `(*)` failure
/// window `(star_low, star_high)`, using binary lifting over `c^(2^j)` so
/// that large budgets stay cheap.
fn star_failure_along(rho0: &Rational, c: &Rational, t: &RhoThresholds, budget: u64) -> StarFailure {
    let (low, high) = (&t.star_low, &t.star_high);
    if low >= high {
        return StarFailure::Never;
    }
    let inside = |rho: &Rational| rho > low && rho < high;
    if inside(rho0) {
        return StarFailure::At(0);
    }
    let increasing = *c > Rational::one();
    // Moving away from the window: it is never entered.
    if (increasing && rho0 >= high) || (!increasing && rho0 <= low) {
        return StarFailure::Never;
    }
    // Still on the near side of the window while `before(rho)` holds.
    let before = |rho: &Rational| if increasing { rho <= low } else { rho >= high };

    let mut powers = vec![c.clone()];
    while (1u64 << (powers.len() - 1)) < budget {
        let last = powers.last().expect("nonempty");
        powers.push(last * last);
    }
    let mut k = 0u64;
    let mut acc = rho0.clone();
    for (j, pw) in powers.iter().enumerate().rev() {
        let step = 1u64 << j;
        if k + step > budget {
            continue;
        }
        let cand = &acc * pw;
        if before(&cand) {
            acc = cand;
            k += step;
        }
    }
    let crossing = k + 1;
    if crossing > budget {
        // Each step multiplies rho by c; a step smaller than the window
        // cannot jump over it.
        let fits = if increasing { low * c < *high } else { high * c > *low };
        return if fits { StarFailure::Beyond } else { StarFailure::Unknown };
    }
    let rho = acc * c;
    if inside(&rho) {
        StarFailure::At(crossing)
    } else {
        StarFailure::Never
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    FullInterval,
    FiniteUnionOfIntervals,
    NotFullInterval,
    NotFiniteUnion,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::FullInterval => "full_interval",
            VerdictKind::FiniteUnionOfIntervals => "finite_union_of_intervals",
            VerdictKind::NotFullInterval => "not_full_interval",
            VerdictKind::NotFiniteUnion => "not_finite_union",
            VerdictKind::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of [`classify`].
///
/// `kind` is the strongest certified statement. The negative facts are kept
/// separately because they can accompany a positive kind: a finite union
/// that is not all of `[-1, 1]` reports both.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralVerdict {
    pub kind: VerdictKind,
    /// First `n` at which `(*)` fails, when located.
    pub star_failure: Option<u64>,
    /// `(*)` is certified to fail at some `n` (index possibly unknown).
    pub not_full_interval: bool,
    /// `(*)` fails for infinitely many `n`.
    pub not_finite_union: bool,
    /// `n0` with both conditions holding for all `n >= n0`.
    pub stabilization_depth: Option<usize>,
    /// `C_{n0}(a) - C_{n0}(b)`, equal to the full difference when certified.
    pub witness: Option<IntervalUnion>,
    pub note: Option<String>,
}

impl CentralVerdict {
    fn inconclusive(note: String) -> Self {
        CentralVerdict {
            kind: VerdictKind::Inconclusive,
            star_failure: None,
            not_full_interval: false,
            not_finite_union: false,
            stabilization_depth: None,
            witness: None,
            note: Some(note),
        }
    }
}

/// One row of the per-`n` condition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionRow {
    pub n: usize,
    pub star: bool,
    pub star_star: bool,
}

/// `(*)` and `(**)` for `n = 0..count` (stopping early where terms run out).
pub fn condition_table(a: &CentralCantor, b: &CentralCantor, count: usize) -> Vec<ConditionRow> {
    (0..count)
        .map_while(|n| {
            Some(ConditionRow {
                n,
                star: condition_star(a, b, n).ok()?,
                star_star: condition_star_star(a, b, n).ok()?,
            })
        })
        .collect()
}

/// Certifies what the interval conditions say about `C(a) - C(b)`.
///
/// * both conditions for every `n`: the full interval `[-1, 1]`;
/// * both conditions for every `n >= n0`: the finite union
///   `C_{n0}(a) - C_{n0}(b)` (reported as the full interval when it is);
/// * `(*)` failing somewhere: not the full interval;
/// * `(*)` failing infinitely often: not a finite union of intervals;
/// * anything else is [`VerdictKind::Inconclusive`].
///
/// For eventually periodic specs the decision is exact: past the longer
/// prefix the conditions depend only on `rho_n = d_n / g_n`, which is
/// multiplied by a fixed `c` every aligned period. With `c = 1` each residue
/// class is constant; otherwise `rho` runs monotonically to `0` or infinity,
/// so `(**)` eventually fails and `(*)` fails at most in one finite window,
/// located exactly within `depth_budget` periods.
pub fn classify(a: &CentralCantor, b: &CentralCantor, depth_budget: u64) -> CentralVerdict {
    match (a.seq.is_finite(), b.seq.is_finite()) {
        (false, false) => classify_periodic(a, b, depth_budget),
        _ => classify_finite(a, b),
    }
}

fn classify_finite(a: &CentralCantor, b: &CentralCantor) -> CentralVerdict {
    let horizon = [a.seq.available_terms(), b.seq.available_terms()]
        .into_iter()
        .flatten()
        .min()
        .expect("at least one spec is finite");
    for n in 0..horizon {
        if !condition_star(a, b, n).expect("within horizon") {
            return CentralVerdict {
                kind: VerdictKind::NotFullInterval,
                star_failure: Some(n as u64),
                not_full_interval: true,
                ..CentralVerdict::inconclusive(format!(
                    "finite spec: only the first {horizon} terms are known"
                ))
            };
        }
    }
    CentralVerdict::inconclusive(format!(
        "finite spec: (*) holds for n < {horizon}; nothing is certified beyond the known terms"
    ))
}

fn classify_periodic(a: &CentralCantor, b: &CentralCantor, budget: u64) -> CentralVerdict {
    let pre = a.seq.prefix.len().max(b.seq.prefix.len());
    let period = a.seq.cycle.len().lcm(&b.seq.cycle.len());

    let mut star_failure: Option<u64> = None;
    let mut not_full = false;
    let mut last_bad: Option<usize> = None;
    let mut tail_ok = true;
    let mut star_infinite = false;
    let mut unknown_classes = 0usize;

    for n in 0..pre {
        let star = condition_star(a, b, n).expect("periodic");
        let pair = condition_star_star(a, b, n).expect("periodic");
        if !star {
            star_failure.get_or_insert(n as u64);
            not_full = true;
        }
        if !(star && pair) {
            last_bad = Some(n);
        }
    }

    let c = (pre + 1..=pre + period).fold(Rational::one(), |acc, i| {
        let ai = a.seq.term(i).expect("periodic");
        let bi = b.seq.term(i).expect("periodic");
        acc * (Rational::one() - ai) / (Rational::one() - bi)
    });
    let constant = c.is_one();

    for r in 0..period {
        let n = pre + r;
        let rho = a.d(n).expect("periodic") / b.d(n).expect("periodic");
        let t = RhoThresholds::new(
            a.seq.term(n + 1).expect("periodic"),
            b.seq.term(n + 1).expect("periodic"),
        );
        if constant {
            let star = t.star(&rho);
            if !star {
                star_infinite = true;
                not_full = true;
                star_failure = Some(star_failure.map_or(n as u64, |f| f.min(n as u64)));
            }
            tail_ok &= star && t.star_star(&rho);
            continue;
        }
        // rho drifts to 0 or infinity, leaving [pair_low, pair_high].
        tail_ok = false;
        match star_failure_along(&rho, &c, &t, budget) {
            StarFailure::Never => {}
            StarFailure::At(k) => {
                let idx = n as u64 + k * period as u64;
                not_full = true;
                star_failure = Some(star_failure.map_or(idx, |f| f.min(idx)));
            }
            StarFailure::Beyond => not_full = true,
            StarFailure::Unknown => unknown_classes += 1,
        }
    }

    if tail_ok {
        let n0 = last_bad.map_or(0, |n| n + 1);
        let witness = difference_at_depth(a, b, n0).expect("periodic");
        let full = witness.is_interval(&int(-1), &int(1));
        debug_assert!(!(full && not_full), "(*) failure contradicts a full witness");
        return CentralVerdict {
            kind: if full {
                VerdictKind::FullInterval
            } else {
                VerdictKind::FiniteUnionOfIntervals
            },
            star_failure,
            not_full_interval: not_full,
            not_finite_union: false,
            stabilization_depth: Some(n0),
            witness: Some(witness),
            note: None,
        };
    }

    let note = if unknown_classes > 0 {
        Some(format!(
            "depth budget of {budget} periods exhausted in {unknown_classes} residue class(es) before (*) was decided"
        ))
    } else if !not_full {
        Some("(*) holds for every n but (**) fails infinitely often; not decided by the interval conditions".into())
    } else {
        None
    };
    let kind = if star_infinite {
        VerdictKind::NotFiniteUnion
    } else if not_full {
        VerdictKind::NotFullInterval
    } else {
        VerdictKind::Inconclusive
    };
    CentralVerdict {
        kind,
        star_failure,
        not_full_interval: not_full,
        not_finite_union: star_infinite,
        stabilization_depth: None,
        witness: None,
        note,
    }
}
