use std::collections::BTreeSet;

use cantorval::digitset::{ds_diff, DigitSet};
use cantorval::numerics::{int, rat, Interval, Rational};
use cantorval::oracle::{certify_interval, cover, member, prefixes, Certificate};
use cantorval::scantor::{all_pairs, digit_set_of};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn digit_set() -> impl Strategy<Value = DigitSet> {
    (2i64..=7).prop_flat_map(|p| {
        prop::collection::btree_set(1 - p..p, 1..=(2 * p - 1) as usize)
            .prop_map(move |d| DigitSet::new(p, d).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prefix_recurrence(d in digit_set(), n in 0usize..5) {
        let now = prefixes(&d, n).unwrap();
        let next = prefixes(&d, n + 1).unwrap();
        let mut expect = BTreeSet::new();
        for &k in &now.prefixes {
            for &x in d.digits() {
                expect.insert(d.base() * k + x);
            }
        }
        prop_assert_eq!(next.prefixes, expect.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn covers_are_nested(d in digit_set(), n in 0usize..5) {
        let outer = cover(&d, n).unwrap().union;
        let inner = cover(&d, n + 1).unwrap().union;
        prop_assert!(inner.is_subset_of(&outer));
    }

    #[test]
    fn membership_agrees_with_covers(d in digit_set(), num in -60i64..=60, den in 1i64..=30) {
        let x = rat(num, den);
        match member(&d, &x).unwrap() {
            c @ Certificate::MemberYes { .. } => {
                prop_assert!(c.verify(&d).unwrap());
                for n in 0..=6 {
                    prop_assert!(cover(&d, n).unwrap().union.contains(&x));
                }
            }
            c @ Certificate::MemberNo { .. } => prop_assert!(c.verify(&d).unwrap()),
            other => prop_assert!(false, "unexpected {:?}", other),
        }
    }
}

#[test]
fn terminating_non_members_leave_some_cover() {
    let d = DigitSet::new(5, [0, 2, 4]).unwrap();
    for num in 0..125 {
        let x = rat(num, 125);
        if let Certificate::MemberNo { depth, .. } = member(&d, &x).unwrap() {
            assert!(!cover(&d, depth).unwrap().union.contains(&x), "x = {x}");
        }
    }
}

#[test]
fn difference_digits_are_homomorphic() {
    for p in 2i64..=6 {
        let universe: Vec<i64> = (0..p).collect();
        let subsets: Vec<DigitSet> = (1u32..(1 << p))
            .map(|m| DigitSet::new(p, universe.iter().copied().filter(|v| m >> v & 1 == 1)).unwrap())
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        for _ in 0..24 {
            let a = &subsets[rng.gen_range(0..subsets.len())];
            let b = &subsets[rng.gen_range(0..subsets.len())];
            let diff = ds_diff(a, b).unwrap();
            for n in 0..=4 {
                let pa = prefixes(a, n).unwrap().prefixes;
                let pb = prefixes(b, n).unwrap().prefixes;
                let pairwise: BTreeSet<i64> = pa.iter().flat_map(|x| pb.iter().map(move |y| x - y)).collect();
                let direct = prefixes(&diff, n).unwrap().prefixes;
                assert_eq!(direct, pairwise.into_iter().collect::<Vec<_>>(), "{a} - {b}, n = {n}");
            }
        }
    }
}

#[test]
fn proper_subsets_of_the_full_digit_range_are_cantor_like() {
    for p in 3i64..=6 {
        for mask in 1u32..(1 << p) - 1 {
            if mask.count_ones() < 2 {
                continue;
            }
            let d: DigitSet = DigitSet::new(p, (0..p).filter(|v| mask >> v & 1 == 1)).unwrap();
            for n in 1..=5 {
                let c = cover(&d, n).unwrap();
                assert!(!c.union.gaps().unwrap().is_empty(), "{d}: no gap at depth {n}");
            }
            // every prefix branches into at least two children inside its piece
            for n in 0..5 {
                let now = prefixes(&d, n).unwrap();
                let next = prefixes(&d, n + 1).unwrap();
                for &k in &now.prefixes {
                    let lo = p * k + d.min();
                    let hi = p * k + d.max();
                    assert!(next.between(lo, hi).len() >= 2, "{d}: prefix {k} at depth {n}");
                }
            }
        }
    }
}

/// Rationals `k / (p^a (p^b - 1))` inside `[lo, hi]`.
fn sample_in(interval: &Interval, p: i64, rng: &mut ChaCha8Rng) -> Rational {
    let a = rng.gen_range(0..4u32);
    let b = rng.gen_range(1..4u32);
    let den: BigInt = num_traits::Pow::pow(BigInt::from(p), a) * (num_traits::Pow::pow(BigInt::from(p), b) - 1);
    let lo = (interval.lo() * Rational::from_integer(den.clone())).ceil().to_integer();
    let hi = (interval.hi() * Rational::from_integer(den.clone())).floor().to_integer();
    if hi < lo {
        return interval.lo().clone();
    }
    let span: i64 = (&hi - &lo).try_into().unwrap();
    Rational::new(lo + rng.gen_range(0..=span), den)
}

#[test]
fn certified_intervals_contain_only_members() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut certified = Vec::new();
    for (a, b) in all_pairs(7) {
        let d = ds_diff(&digit_set_of(&a), &digit_set_of(&b)).unwrap();
        let pre = prefixes(&d, 2).unwrap();
        let scale = int(d.base()).pow(2);
        for &k in pre.prefixes.iter().step_by(5) {
            let cell = Interval::new(int(k) / &scale, int(k + 1) / &scale).unwrap();
            if cell.hi() > &int(1) {
                continue;
            }
            if let Ok(Some(cert)) = certify_interval(&d, &cell, 2) {
                certified.push((d.clone(), cell, cert));
            }
        }
    }
    assert!(certified.len() > 100);
    for i in 0..1000 {
        let (d, cell, cert) = &certified[rng.gen_range(0..certified.len())];
        assert!(cert.verify(d).unwrap());
        let x = sample_in(cell, d.base(), &mut rng);
        assert!(
            matches!(member(d, &x).unwrap(), Certificate::MemberYes { .. }),
            "sample {i}: {x} in certified {cell} for {d}"
        );
    }
}
