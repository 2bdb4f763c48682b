//! Brute-force verification for the sets `A_p` of a digit set.
//!
//! Everything here works from finite data: the depth-`n` prefix sums
//! `k / p^n`, the outer cover they induce, and an exact automaton for
//! membership of a rational. Results are returned as [`Certificate`]s that
//! [`Certificate::verify`] replays independently.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::central::{
    difference_at_depth, j_interval, newhouse_test, CentralCantor, CentralVerdict, JSignature, VerdictKind,
};
use crate::digitset::{ds_diff, DigitSet};
use crate::error::{Error, Result};
use crate::numerics::{int, serialize_rational, Gap, Interval, IntervalUnion, Rational};
use crate::scantor::{classify, digit_set_of, SCantorParams, TopologyClass};

/// Default cap on the number of membership automaton states.
pub const DEFAULT_STATE_LIMIT: usize = 1 << 22;

/// Largest prefix window the DP will allocate.
const MAX_PREFIX_WINDOW: i64 = 1 << 28;

/// Reachable prefix numerators `k` with `k / p^n` a depth-`n` digit sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixSet {
    pub base: i64,
    pub depth: usize,
    pub prefixes: Vec<i64>,
}

impl PrefixSet {
    pub fn contains(&self, k: i64) -> bool {
        self.prefixes.binary_search(&k).is_ok()
    }

    pub fn len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    /// Prefixes in `<lo, hi>`.
    pub fn between(&self, lo: i64, hi: i64) -> &[i64] {
        let a = self.prefixes.partition_point(|&k| k < lo);
        let b = self.prefixes.partition_point(|&k| k <= hi);
        &self.prefixes[a..b.max(a)]
    }
}

fn pow_checked(p: i64, n: usize) -> Option<i64> {
    p.checked_pow(u32::try_from(n).ok()?)
}

/// Depth-`n` prefixes by the recurrence `P(n+1) = p P(n) + D`.
pub fn prefixes(d: &DigitSet, n: usize) -> Result<PrefixSet> {
    let p = d.base();
    let overflow = || Error::Overflow { base: p, depth: n };
    let mut current = vec![0i64];
    for depth in 1..=n {
        // P(depth) lies in [min * s, max * s], s = (p^depth - 1) / (p - 1)
        let s = (pow_checked(p, depth).ok_or_else(overflow)? - 1) / (p - 1);
        let lo = d.min().checked_mul(s).ok_or_else(overflow)?;
        let hi = d.max().checked_mul(s).ok_or_else(overflow)?;
        let width = hi.checked_sub(lo).ok_or_else(overflow)?;
        if width >= MAX_PREFIX_WINDOW {
            return Err(overflow());
        }
        let mut seen = vec![false; width as usize + 1];
        for &k in &current {
            let base = p * k;
            for &digit in d.digits() {
                seen[(base + digit - lo) as usize] = true;
            }
        }
        current = seen
            .iter()
            .enumerate()
            .filter_map(|(i, &hit)| hit.then_some(lo + i as i64))
            .collect();
    }
    Ok(PrefixSet {
        base: p,
        depth: n,
        prefixes: current,
    })
}

/// Outer approximation of `A_p` at depth `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cover {
    pub base: i64,
    pub depth: usize,
    pub union: IntervalUnion,
}

/// Merged integer pieces `[k(p-1) + min, k(p-1) + max]`, i.e. the cover
/// scaled by `(p - 1) p^n`.
fn scaled_pieces(d: &DigitSet, pre: &PrefixSet) -> Vec<(i128, i128)> {
    let q = (d.base() - 1) as i128;
    let (lo, hi) = (d.min() as i128, d.max() as i128);
    let mut out: Vec<(i128, i128)> = Vec::new();
    for &k in &pre.prefixes {
        let piece = (k as i128 * q + lo, k as i128 * q + hi);
        match out.last_mut() {
            Some(last) if piece.0 <= last.1 => last.1 = last.1.max(piece.1),
            _ => out.push(piece),
        }
    }
    out
}

/// `union over k of [k/p^n + min/((p-1)p^n), k/p^n + max/((p-1)p^n)]`.
pub fn cover(d: &DigitSet, n: usize) -> Result<Cover> {
    let pre = prefixes(d, n)?;
    let scale = BigInt::from(d.base() - 1) * BigInt::from(d.base()).pow(n as u32);
    let at = |v: i128| Rational::new(BigInt::from(v), scale.clone());
    let parts = scaled_pieces(d, &pre)
        .into_iter()
        .map(|(a, b)| Interval::new(at(a), at(b)).expect("ordered piece"));
    Ok(Cover {
        base: d.base(),
        depth: n,
        union: IntervalUnion::normalize(parts),
    })
}

/// Whether `cover(d, n)` is a single interval, without building rationals.
pub fn cover_connected(d: &DigitSet, n: usize) -> Result<bool> {
    let pre = prefixes(d, n)?;
    let reach = (d.max() - d.min()) as i128;
    let q = (d.base() - 1) as i128;
    Ok(pre
        .prefixes
        .windows(2)
        .all(|w| (w[1] - w[0]) as i128 * q <= reach))
}

/// How a unit cell `[k, k+1] / p^n` is known to lie inside `A_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CellKind {
    /// `k` and `k + 1` are both prefixes.
    BiObtainable,
    /// `k` is a prefix and `<0, p-1>` is contained in the digits.
    HalfUp,
    /// `k + 1` is a prefix and `<-p+1, 0>` is contained in the digits.
    HalfDown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub k: i64,
    pub kind: CellKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method")]
pub enum IntervalWitness {
    /// Unit cells at the certificate depth whose union contains the interval.
    Cells { cells: Vec<Cell> },
    /// `I` is contained in `union over prefixes k of (k + I) / p^n`, so the
    /// depth-`n` iterate of the digit maps does not shrink `I` and `I`
    /// lies in the attractor.
    SelfCover,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    IntervalInside {
        interval: Interval,
        depth: usize,
        witness: IntervalWitness,
    },
    GapCertified {
        gap: Gap,
        depth: usize,
    },
    MemberYes {
        #[serde(serialize_with = "serialize_rational")]
        x: Rational,
        prefix: Vec<i64>,
        cycle: Vec<i64>,
    },
    MemberNo {
        #[serde(serialize_with = "serialize_rational")]
        x: Rational,
        /// `x` is outside `cover(d, depth)`.
        depth: usize,
    },
}

impl Certificate {
    /// Replays the certificate against `d` from scratch.
    pub fn verify(&self, d: &DigitSet) -> Result<bool> {
        match self {
            Certificate::IntervalInside {
                interval,
                depth,
                witness,
            } => {
                let pre = prefixes(d, *depth)?;
                Ok(match witness {
                    IntervalWitness::Cells { cells } => {
                        let conditions = (interval_precondition(d).is_ok(), half_cell_flags(d));
                        cells.iter().all(|c| cell_valid(&pre, c, conditions))
                            && cells_cover(&cells.iter().map(|c| c.k).collect::<Vec<_>>(), *depth, d.base(), interval)
                    }
                    IntervalWitness::SelfCover => self_covers(&pre, interval),
                })
            }
            Certificate::GapCertified { gap, depth } => Ok(!cover(d, *depth)?.union.meets_gap(gap)),
            Certificate::MemberYes { x, prefix, cycle } => Ok(!cycle.is_empty()
                && prefix.iter().chain(cycle).all(|&v| d.contains(v))
                && lasso_value(d.base(), prefix, cycle) == *x),
            Certificate::MemberNo { x, depth } => Ok(!cover(d, *depth)?.union.contains(x)),
        }
    }
}

/// `0.prefix (cycle)` in base `p`.
pub fn lasso_value(p: i64, prefix: &[i64], cycle: &[i64]) -> Rational {
    let pr = int(p);
    let mut head = Rational::zero();
    let mut scale = Rational::one();
    for &v in prefix {
        scale /= &pr;
        head += int(v) * &scale;
    }
    if cycle.is_empty() {
        return head;
    }
    let block = cycle.iter().fold(BigInt::zero(), |acc, &v| acc * p + v);
    let period = BigInt::from(p).pow(cycle.len() as u32) - 1;
    head + scale * Rational::new(block, period)
}

/// Decides `x in A_p`.
///
/// With `v` the denominator of `x`, every residual `t_i = p t_{i-1} - x_i`
/// is `k / v` for an integer `k` confined to `[min v / (p-1), max v / (p-1)]`,
/// so the residual graph is finite; `x` belongs iff an infinite path leaves
/// `t_0 = x`. The graph is built breadth first and dead ends are pruned.
pub fn member(d: &DigitSet, x: &Rational) -> Result<Certificate> {
    member_with_limit(d, x, DEFAULT_STATE_LIMIT)
}

pub fn member_with_limit(d: &DigitSet, x: &Rational, limit: usize) -> Result<Certificate> {
    let too_large = Error::StateSpaceTooLarge { limit };
    let p = d.base() as i128;
    let v = x.denom().to_i128().ok_or(too_large.clone())?;
    let k0 = x.numer().to_i128().ok_or(too_large.clone())?;
    let q = p - 1;
    let lo = Integer::div_ceil(&(d.min() as i128 * v), &q);
    let hi = Integer::div_floor(&(d.max() as i128 * v), &q);
    if k0 < lo || k0 > hi {
        return Ok(Certificate::MemberNo { x: x.clone(), depth: 0 });
    }
    let mut index: HashMap<i128, usize> = HashMap::new();
    let mut states = vec![k0];
    let mut edges: Vec<Vec<(usize, i64)>> = Vec::new();
    index.insert(k0, 0);
    let mut next = 0;
    while next < states.len() {
        let k = states[next];
        let mut out = Vec::new();
        for &digit in d.digits() {
            let t = p * k - digit as i128 * v;
            if t < lo || t > hi {
                continue;
            }
            let id = match index.get(&t) {
                Some(&id) => id,
                None => {
                    if states.len() >= limit {
                        return Err(too_large);
                    }
                    index.insert(t, states.len());
                    states.push(t);
                    states.len() - 1
                }
            };
            out.push((id, digit));
        }
        edges.push(out);
        next += 1;
    }

    // Prune states without an infinite continuation; `height` is the
    // longest remaining path from a pruned state.
    let n = states.len();
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut outdeg: Vec<usize> = vec![0; n];
    for (s, out) in edges.iter().enumerate() {
        outdeg[s] = out.len();
        for &(t, _) in out {
            reverse[t].push(s);
        }
    }
    let mut height = vec![0usize; n];
    let mut dead = vec![false; n];
    let mut queue: Vec<usize> = (0..n).filter(|&s| outdeg[s] == 0).collect();
    while let Some(s) = queue.pop() {
        dead[s] = true;
        for &r in &reverse[s] {
            height[r] = height[r].max(height[s] + 1);
            outdeg[r] -= 1;
            if outdeg[r] == 0 {
                queue.push(r);
            }
        }
    }
    if dead[0] {
        return Ok(Certificate::MemberNo {
            x: x.clone(),
            depth: height[0] + 1,
        });
    }

    let mut order: HashMap<usize, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut s = 0usize;
    while !order.contains_key(&s) {
        order.insert(s, digits.len());
        let &(t, digit) = edges[s]
            .iter()
            .find(|(t, _)| !dead[*t])
            .expect("live state has a live successor");
        digits.push(digit);
        s = t;
    }
    let start = order[&s];
    let cycle = digits.split_off(start);
    Ok(Certificate::MemberYes {
        x: x.clone(),
        prefix: digits,
        cycle,
    })
}

fn require_standing(d: &DigitSet) -> Result<()> {
    d.require_bounded()?;
    let p = d.base();
    if p < 3 || !(d.contains(1 - p) && d.contains(0) && d.contains(p - 1)) {
        return Err(Error::Precondition(format!(
            "{d} must have base > 2 and contain {}, 0 and {}",
            1 - p,
            p - 1
        )));
    }
    Ok(())
}

/// Standing assumption plus: every `k in <0, p-1>` has `k` or `k - p` in the
/// digits. Under it bi-obtainability propagates to all deeper levels.
fn interval_precondition(d: &DigitSet) -> Result<()> {
    require_standing(d)?;
    let p = d.base();
    match (0..p).find(|&k| !d.contains(k) && !d.contains(k - p)) {
        None => Ok(()),
        Some(k) => Err(Error::Precondition(format!(
            "interval certificates refused for {d}: neither {k} nor {} is a digit",
            k - p
        ))),
    }
}

/// `(<0, p-1> in D, <-p+1, 0> in D)`.
fn half_cell_flags(d: &DigitSet) -> (bool, bool) {
    let p = d.base();
    ((0..p).all(|k| d.contains(k)), (1 - p..=0).all(|k| d.contains(k)))
}

fn cell_valid(pre: &PrefixSet, c: &Cell, (propagates, (up, down)): (bool, (bool, bool))) -> bool {
    match c.kind {
        CellKind::BiObtainable => propagates && pre.contains(c.k) && pre.contains(c.k + 1),
        CellKind::HalfUp => up && pre.contains(c.k),
        CellKind::HalfDown => down && pre.contains(c.k + 1),
    }
}

/// Whether the unit cells `[k, k+1] / p^n` together contain `interval`.
fn cells_cover(ks: &[i64], n: usize, p: i64, interval: &Interval) -> bool {
    let scale = int(p).pow(n as i32);
    let lo = interval.lo() * &scale;
    let hi = interval.hi() * &scale;
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    // walk the merged runs of consecutive cells
    let mut i = 0;
    while i < ks.len() {
        let mut j = i;
        while j + 1 < ks.len() && ks[j + 1] == ks[j] + 1 {
            j += 1;
        }
        if int(ks[i]) <= lo && hi <= int(ks[j] + 1) {
            return true;
        }
        i = j + 1;
    }
    false
}

fn self_covers(pre: &PrefixSet, interval: &Interval) -> bool {
    let scale = int(pre.base).pow(pre.depth as i32);
    let (lo, hi) = (interval.lo(), interval.hi());
    // (k + I) / p^n meets I iff lo p^n - hi <= k <= hi p^n - lo
    let kmin = (lo * &scale - hi).ceil().to_integer();
    let kmax = (hi * &scale - lo).floor().to_integer();
    let (Some(kmin), Some(kmax)) = (kmin.to_i64(), kmax.to_i64()) else {
        return false;
    };
    let pieces = pre.between(kmin, kmax).iter().map(|&k| {
        let shift = int(k);
        Interval::new((&shift + lo) / &scale, (&shift + hi) / &scale).expect("ordered")
    });
    IntervalUnion::normalize(pieces).contains_interval(interval)
}

/// `x` lies in a cell `[k, k+1] / p^n` with `k` and `k + 1` both depth-`n`
/// prefixes.
pub fn bi_obtainable(d: &DigitSet, x: &Rational, n: usize) -> Result<bool> {
    require_standing(d)?;
    if x.abs() > Rational::one() {
        return Err(Error::Precondition(format!("{x} lies outside [-1, 1]")));
    }
    let pre = prefixes(d, n)?;
    let scaled = x * int(d.base()).pow(n as i32);
    let k = scaled.floor().to_integer().to_i64().ok_or(Error::Overflow { base: d.base(), depth: n })?;
    let hit = |k: i64| pre.contains(k) && pre.contains(k + 1);
    Ok(hit(k) || (scaled.is_integer() && hit(k - 1)))
}

/// Certifies `interval` inside `A_p` from depth-`n` data.
///
/// `Err` is a refusal (preconditions fail, so no certificate of this kind
/// can exist); `Ok(None)` means the depth-`n` data did not suffice.
pub fn certify_interval(d: &DigitSet, interval: &Interval, n: usize) -> Result<Option<Certificate>> {
    interval_precondition(d)?;
    if interval.lo() < &int(-1) || interval.hi() > &int(1) {
        return Err(Error::Precondition(format!("{interval} is not inside [-1, 1]")));
    }
    let pre = prefixes(d, n)?;
    let p = d.base();
    let (up, down) = half_cell_flags(d);
    let scale = int(p).pow(n as i32);
    let first = (interval.lo() * &scale).floor().to_integer().to_i64();
    let last = (interval.hi() * &scale).ceil().to_integer().to_i64();
    if let (Some(first), Some(last)) = (first, last) {
        let mut cells = Vec::new();
        for k in first..last.max(first + 1) {
            let kind = if pre.contains(k) && pre.contains(k + 1) {
                Some(CellKind::BiObtainable)
            } else if down && pre.contains(k + 1) {
                Some(CellKind::HalfDown)
            } else if up && pre.contains(k) {
                Some(CellKind::HalfUp)
            } else {
                None
            };
            if let Some(kind) = kind {
                cells.push(Cell { k, kind });
            }
        }
        let ks: Vec<i64> = cells.iter().map(|c| c.k).collect();
        if cells_cover(&ks, n, p, interval) {
            return Ok(Some(Certificate::IntervalInside {
                interval: interval.clone(),
                depth: n,
                witness: IntervalWitness::Cells { cells },
            }));
        }
    }
    if self_covers(&pre, interval) {
        return Ok(Some(Certificate::IntervalInside {
            interval: interval.clone(),
            depth: n,
            witness: IntervalWitness::SelfCover,
        }));
    }
    Ok(None)
}

/// Gaps of `cover(d, n)`; each is disjoint from `A_p`. The list is not
/// claimed to contain every gap of `A_p`.
pub fn certify_gap(d: &DigitSet, n: usize) -> Result<Vec<Certificate>> {
    Ok(cover(d, n)?
        .union
        .gaps()?
        .into_iter()
        .map(|gap| Certificate::GapCertified { gap, depth: n })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrosscheckReport {
    pub subject: String,
    pub verdict: String,
    pub depth: usize,
    pub checks: Vec<Check>,
    /// Certificates backing the checks, including any offending one.
    pub certificates: Vec<Certificate>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Gaps of `gaps` meeting the open window `(lo, hi)`.
fn gaps_meeting(gaps: &[Gap], lo: &Rational, hi: &Rational) -> usize {
    let start = gaps.partition_point(|g| g.hi() <= lo);
    gaps[start..].iter().take_while(|g| g.lo() < hi).count()
}

/// Extra levels examined when looking for new gaps near a gap endpoint.
/// A single missing digit on one side only separates pieces two levels down.
pub const ACCUMULATION_LOOKAHEAD: usize = 2;

/// Runs the class-specific certificate checks for
/// `C(l1, r1, p) - C(l2, r2, p)` at depth `n >= 2`.
///
/// Gap-adjacent intervals and gap accumulation are finite-depth signatures:
/// every certificate is sound, but passing the signature is evidence for
/// the asymptotic property rather than a proof of it.
pub fn crosscheck_scantor(p1: &SCantorParams, p2: &SCantorParams, n: usize) -> Result<CrosscheckReport> {
    if n < 2 {
        return Err(Error::Precondition(format!("crosscheck depth must be at least 2, got {n}")));
    }
    let class = classify(p1, p2)?;
    let d = ds_diff(&digit_set_of(p1), &digit_set_of(p2))?;
    let p = d.base();
    let full = Interval::new(int(-1), int(1))?;
    let mut checks = Vec::new();
    let mut certs = Vec::new();

    let covers: Vec<Cover> = (0..=n + ACCUMULATION_LOOKAHEAD).map(|m| cover(&d, m)).collect::<Result<_>>()?;
    let gaps: Vec<Vec<Gap>> = covers.iter().map(|c| c.union.gaps()).collect::<Result<_>>()?;
    let full_through = covers[..=n].iter().all(|c| c.union.is_interval(&int(-1), &int(1)));
    checks.push(Check::new(
        "cover_full_iff_full_interval",
        full_through == (class == TopologyClass::FullInterval),
        format!("cover is [-1,1] through depth {n}: {full_through}"),
    ));

    let interval_cert = certify_interval(&d, &full, n);
    match class {
        TopologyClass::FullInterval => {
            let ok = matches!(interval_cert, Ok(Some(_)));
            checks.push(Check::new("full_interval_certified", ok, format!("{interval_cert:?}")));
            if let Ok(Some(c)) = interval_cert {
                certs.push(c);
            }
        }
        TopologyClass::CantorSet => {
            let empty_depth = (1..=n).find(|&m| gaps[m].is_empty());
            checks.push(Check::new(
                "gaps_at_every_depth",
                empty_depth.is_none(),
                match empty_depth {
                    Some(m) => format!("no certified gap at depth {m}"),
                    None => format!("{} certified gaps at depth {n}", gaps[n].len()),
                },
            ));
            certs.extend(gaps[n].iter().cloned().map(|gap| Certificate::GapCertified { gap, depth: n }));
            let width = Rational::new(2.into(), BigInt::from(p).pow(n as u32));
            let mut offending = None;
            for part in covers[n].union.parts().iter().filter(|i| i.len() >= width) {
                if let Ok(Some(c)) = certify_interval(&d, part, n) {
                    offending = Some(c);
                    break;
                }
            }
            checks.push(Check::new(
                "no_interval_certificate",
                offending.is_none(),
                match &offending {
                    Some(_) => "an interval certificate was issued for a Cantor set".to_string(),
                    None => "every cover component refused or uncertified".to_string(),
                },
            ));
            certs.extend(offending);
        }
        TopologyClass::LCantorval | TopologyClass::RCantorval | TopologyClass::MCantorval => {
            checks.push(Check::new(
                "gaps_present",
                !gaps[n].is_empty(),
                format!("{} certified gaps at depth {n}", gaps[n].len()),
            ));
            let step = Rational::new(BigInt::one(), BigInt::from(p).pow(n as u32));
            let deeper = &gaps[n + ACCUMULATION_LOOKAHEAD];

            let some_interval = some_certified_cell(&d, n)?;
            checks.push(Check::new(
                "some_interval_certified",
                some_interval.is_some(),
                "a cell of positive length lies inside the set",
            ));
            certs.extend(some_interval);

            let right_adjacent = class == TopologyClass::LCantorval;
            let left_adjacent = class == TopologyClass::RCantorval;
            let left_accumulates = class != TopologyClass::RCantorval;
            let right_accumulates = class != TopologyClass::LCantorval;

            for gap in &gaps[n] {
                if right_adjacent || left_adjacent {
                    let side = if right_adjacent {
                        Interval::new(gap.hi().clone(), gap.hi() + &step)?
                    } else {
                        Interval::new(gap.lo() - &step, gap.lo().clone())?
                    };
                    let cert = certify_interval(&d, &side, n);
                    let name = if right_adjacent { "adjacent_interval_right" } else { "adjacent_interval_left" };
                    match cert {
                        Ok(Some(c)) => certs.push(c),
                        other => {
                            checks.push(Check::new(name, false, format!("gap {gap}: {other:?}")));
                            certs.push(Certificate::GapCertified { gap: gap.clone(), depth: n });
                        }
                    }
                }
                let sides = [
                    (left_accumulates, "accumulation_left", gap.lo() - &step, gap.lo().clone()),
                    (right_accumulates, "accumulation_right", gap.hi().clone(), gap.hi() + &step),
                ];
                for (wanted, name, lo, hi) in sides {
                    if !wanted {
                        continue;
                    }
                    let before = gaps_meeting(&gaps[n], &lo, &hi);
                    let after = gaps_meeting(deeper, &lo, &hi);
                    if after <= before {
                        checks.push(Check::new(
                            name,
                            false,
                            format!("gap {gap}: {before} gaps near it at depth {n}, {after} at depth {}", n + ACCUMULATION_LOOKAHEAD),
                        ));
                        certs.push(Certificate::GapCertified { gap: gap.clone(), depth: n });
                    }
                }
            }
            for (wanted, name) in [
                (right_adjacent, "adjacent_interval_right"),
                (left_adjacent, "adjacent_interval_left"),
                (left_accumulates, "accumulation_left"),
                (right_accumulates, "accumulation_right"),
            ] {
                if wanted && !checks.iter().any(|c| c.name == name) {
                    checks.push(Check::new(name, true, format!("all {} gaps at depth {n}", gaps[n].len())));
                }
            }
        }
    }

    for c in &certs {
        if !c.verify(&d)? {
            checks.push(Check::new("certificate_replay", false, format!("{c:?}")));
        }
    }

    Ok(CrosscheckReport {
        subject: format!("{p1} - {p2}"),
        verdict: class.to_string(),
        depth: n,
        checks,
        certificates: certs,
    })
}

/// Any depth-`n` unit cell certified inside the set.
fn some_certified_cell(d: &DigitSet, n: usize) -> Result<Option<Certificate>> {
    if interval_precondition(d).is_err() {
        return Ok(None);
    }
    let pre = prefixes(d, n)?;
    let scale = int(d.base()).pow(n as i32);
    for &k in &pre.prefixes {
        let cell = Interval::new(int(k) / &scale, int(k + 1) / &scale)?;
        if cell.hi() > &int(1) {
            break;
        }
        if let Some(c) = certify_interval(d, &cell, n)? {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Replays a central verdict against explicit depth-`m` differences.
///
/// A located failure of `(*)` at `f` predicts the hole
/// `(r(J_{0^(f+1)}), min(l(J_{0^f 1}), l(J_{0^f 2})))` next to `-1`; it is
/// checked against the depth-`f+1` difference even when `f >= n`.
pub fn crosscheck_central(a: &CentralCantor, b: &CentralCantor, verdict: &CentralVerdict, n: usize) -> Result<CrosscheckReport> {
    let mut checks = Vec::new();
    let full = |m: usize| -> Result<bool> { Ok(difference_at_depth(a, b, m)?.is_interval(&int(-1), &int(1))) };

    if newhouse_test(a, b) {
        checks.push(Check::new(
            "newhouse_consistent",
            !verdict.not_full_interval,
            "thickness product at least 1",
        ));
    }

    match verdict.kind {
        VerdictKind::FullInterval => {
            let bad = (0..=n).map(|m| full(m).map(|ok| (m, ok))).collect::<Result<Vec<_>>>()?;
            let first_bad = bad.iter().find(|(_, ok)| !ok).map(|(m, _)| *m);
            checks.push(Check::new(
                "difference_full_through_depth",
                first_bad.is_none(),
                match first_bad {
                    Some(m) => format!("difference at depth {m} is not [-1,1]"),
                    None => format!("[-1,1] at every depth up to {n}"),
                },
            ));
        }
        VerdictKind::FiniteUnionOfIntervals => {
            let n0 = verdict.stabilization_depth.ok_or_else(|| Error::Precondition("finite union without stabilization depth".into()))?;
            let witness = verdict.witness.as_ref().ok_or_else(|| Error::Precondition("finite union without witness".into()))?;
            let top = n.max(n0 + 1);
            let mut moved = None;
            for m in n0..=top {
                if difference_at_depth(a, b, m)? != *witness {
                    moved = Some(m);
                    break;
                }
            }
            checks.push(Check::new(
                "stabilizes_at_witness",
                moved.is_none(),
                match moved {
                    Some(m) => format!("difference at depth {m} differs from the witness"),
                    None => format!("equal to the witness for depths {n0}..={top}"),
                },
            ));
        }
        _ => {}
    }

    if let Some(f) = verdict.star_failure {
        let f = usize::try_from(f).map_err(|_| Error::Precondition("failure index too large".into()))?;
        let sig = |tail: Option<u8>, zeros: usize| {
            let mut v = vec![0u8; zeros];
            v.extend(tail);
            JSignature::new(v).expect("digits are valid")
        };
        let left = j_interval(a, b, &sig(None, f + 1))?;
        let one = j_interval(a, b, &sig(Some(1), f))?;
        let two = j_interval(a, b, &sig(Some(2), f))?;
        let hole_hi = one.lo().min(two.lo()).clone();
        match Gap::new(left.hi().clone(), hole_hi) {
            Ok(hole) => {
                let diff = difference_at_depth(a, b, f + 1)?;
                checks.push(Check::new(
                    "predicted_hole_present",
                    !diff.meets_gap(&hole),
                    format!("hole {hole} against depth {} difference", f + 1),
                ));
            }
            Err(_) => checks.push(Check::new(
                "predicted_hole_present",
                false,
                format!("(*) fails at {f} but the predicted hole is empty"),
            )),
        }
    }

    Ok(CrosscheckReport {
        subject: format!("C({}) - C({})", a.seq(), b.seq()),
        verdict: verdict.kind.to_string(),
        depth: n,
        checks,
        certificates: Vec::new(),
    })
}
