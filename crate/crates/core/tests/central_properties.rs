use cantorval::central::{
    classify, condition_star, difference_at_depth, CentralCantor, SequenceSpec, VerdictKind, DEFAULT_DEPTH_BUDGET,
};
use cantorval::numerics::{int, rat, Rational};
use cantorval::oracle::crosscheck_central;
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (1i64..12, 3i64..40).prop_filter_map("in (0,1)", |(n, d)| (3 * n <= d).then(|| rat(n, d))),
        (1i64..30, 2i64..31).prop_filter_map("in (0,1)", |(n, d)| (n < d).then(|| rat(n, d))),
    ]
}

fn periodic_spec() -> impl Strategy<Value = CentralCantor> {
    (prop::collection::vec(term(), 0..3), prop::collection::vec(term(), 1..3))
        .prop_map(|(p, c)| CentralCantor::new(SequenceSpec::new(p, c).unwrap()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn verdicts_survive_brute_force(a in periodic_spec(), b in periodic_spec()) {
        let v = classify(&a, &b, DEFAULT_DEPTH_BUDGET);
        let report = crosscheck_central(&a, &b, &v, 5).unwrap();
        prop_assert!(report.passed(), "{}: {:?}", report.subject, report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn located_failures_are_first_failures(a in periodic_spec(), b in periodic_spec()) {
        let v = classify(&a, &b, DEFAULT_DEPTH_BUDGET);
        if let Some(f) = v.star_failure {
            let f = f as usize;
            prop_assert!(!condition_star(&a, &b, f).unwrap());
            for n in 0..f.min(200) {
                prop_assert!(condition_star(&a, &b, n).unwrap(), "(*) already fails at {}", n);
            }
            prop_assert!(v.not_full_interval);
        }
    }

    #[test]
    fn certified_verdicts_match_the_scan(a in periodic_spec(), b in periodic_spec()) {
        // explicit scan over several periods; (*) failing anywhere rules out the full interval
        let v = classify(&a, &b, DEFAULT_DEPTH_BUDGET);
        let scan_fails = (0..40).any(|n| !condition_star(&a, &b, n).unwrap());
        if scan_fails {
            prop_assert!(v.not_full_interval);
            prop_assert_ne!(v.kind, VerdictKind::FullInterval);
        }
        if v.kind == VerdictKind::FullInterval {
            for n in 0..=4 {
                prop_assert!(difference_at_depth(&a, &b, n).unwrap().is_interval(&int(-1), &int(1)));
            }
        }
    }
}

#[test]
fn slow_drift_is_located_far_out() {
    // rho starts near 10 and shrinks by 100/101 per step into the window (101/200, 99/50)
    let a = CentralCantor::parse("1/100;1/2").unwrap();
    let b = CentralCantor::parse("9/10;99/200").unwrap();
    let v = classify(&a, &b, 10_000);
    let f = v.star_failure.expect("failure located") as usize;
    assert!(f > 100, "f = {f}");
    assert!(!condition_star(&a, &b, f).unwrap());
    assert!(condition_star(&a, &b, f - 1).unwrap());
    // a tiny budget cannot reach it
    let short = classify(&a, &b, 2);
    assert!(short.star_failure.is_none());
}

#[test]
fn verdict_serializes() {
    let a = CentralCantor::parse("1/2;1/4").unwrap();
    let v = classify(&a, &a, DEFAULT_DEPTH_BUDGET);
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["kind"], "finite_union_of_intervals");
    assert_eq!(json["stabilization_depth"], 1);
    assert_eq!(json["witness"][1]["lo"], "-1/4");
}
