//! Report assembly for every subcommand.

use std::fmt::Write as _;

use cantorval::central::{
    self, condition_table, difference_at_depth, newhouse_test, CentralCantor, CentralVerdict, ConditionRow,
    VerdictKind,
};
use cantorval::digitset::{ds_diff, DigitSet};
use cantorval::numerics::serialize_rational;
use cantorval::oracle::{crosscheck_central, crosscheck_scantor, CrosscheckReport};
use cantorval::scantor::{self, all_pairs, digit_set_of, lr_sets, IntRange, SCantorParams, SConditions, TopologyClass};
use cantorval::Rational;
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::Format;

pub const SCHEMA: u32 = 1;

/// Rendered output plus the process exit code.
pub struct Outcome {
    pub body: String,
    pub code: u8,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Outcome { body, code: 0 }
    }
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: u32,
    command: &'static str,
    #[serde(flatten)]
    body: T,
}

fn to_json<T: Serialize>(command: &'static str, body: T) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, command, body }).expect("reports serialize");
    s.push('\n');
    s
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Rows covering the prefixes and one common period of the cycles.
fn table_length(a: &CentralCantor, b: &CentralCantor) -> usize {
    let (sa, sb) = (a.seq(), b.seq());
    match (sa.available_terms(), sb.available_terms()) {
        (Some(x), Some(y)) => x.min(y),
        (Some(x), None) | (None, Some(x)) => x,
        (None, None) => {
            let prefix = sa.prefix().len().max(sb.prefix().len());
            prefix + sa.cycle().len().lcm(&sb.cycle().len())
        }
    }
}

#[derive(Serialize)]
struct Thickness {
    #[serde(serialize_with = "serialize_rational")]
    a: Rational,
    #[serde(serialize_with = "serialize_rational")]
    b: Rational,
    #[serde(serialize_with = "serialize_rational")]
    product: Rational,
}

#[derive(Serialize)]
struct DepthSummary {
    depth: usize,
    components: usize,
    #[serde(serialize_with = "serialize_rational")]
    measure: Rational,
    full_interval: bool,
}

#[derive(Serialize)]
struct CentralReport<'a> {
    a: String,
    b: String,
    verdict: VerdictKind,
    detail: &'a CentralVerdict,
    conditions: Vec<ConditionRow>,
    thickness: Thickness,
    newhouse: bool,
    difference: DepthSummary,
}

pub fn central_classify(a: &CentralCantor, b: &CentralCantor, budget: u64, depth: usize, format: Format) -> cantorval::Result<Outcome> {
    let verdict = central::classify(a, b, budget);
    // finite specs only define the first few levels
    let depth = [a.seq().available_terms(), b.seq().available_terms()].into_iter().flatten().fold(depth, usize::min);
    let diff = difference_at_depth(a, b, depth)?;
    let (ta, tb) = (a.thickness(), b.thickness());
    let report = CentralReport {
        a: a.seq().to_string(),
        b: b.seq().to_string(),
        verdict: verdict.kind,
        detail: &verdict,
        conditions: condition_table(a, b, table_length(a, b)),
        thickness: Thickness { product: &ta * &tb, a: ta, b: tb },
        newhouse: newhouse_test(a, b),
        difference: DepthSummary {
            depth,
            components: diff.len(),
            measure: diff.measure(),
            full_interval: diff.is_interval(&Rational::from_integer((-1).into()), &Rational::from_integer(1.into())),
        },
    };
    if format == Format::Json {
        return Ok(Outcome::ok(to_json("central classify", report)));
    }
    let mut s = String::new();
    let v = &verdict;
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    writeln!(s, "a: {}", report.a).unwrap();
    writeln!(s, "b: {}", report.b).unwrap();
    writeln!(s, "verdict: {}", v.kind).unwrap();
    writeln!(s, "not_full_interval: {}", v.not_full_interval).unwrap();
    writeln!(s, "not_finite_union: {}", v.not_finite_union).unwrap();
    writeln!(s, "star_failure: {}", opt(v.star_failure.map(|n| n.to_string()))).unwrap();
    writeln!(s, "stabilization_depth: {}", opt(v.stabilization_depth.map(|n| n.to_string()))).unwrap();
    writeln!(s, "witness: {}", opt(v.witness.as_ref().map(|w| w.to_string()))).unwrap();
    if let Some(note) = &v.note {
        writeln!(s, "note: {note}").unwrap();
    }
    let t = &report.thickness;
    writeln!(s, "thickness: a={} b={} product={}", t.a, t.b, t.product).unwrap();
    writeln!(s, "newhouse: {}", report.newhouse).unwrap();
    let d = &report.difference;
    writeln!(s, "depth {}: {} component(s), measure {}", d.depth, d.components, d.measure).unwrap();
    writeln!(s, "conditions:\n  n  (*)  (**)").unwrap();
    for row in &report.conditions {
        writeln!(s, "  {:<2} {:<4} {}", row.n, yes(row.star), yes(row.star_star)).unwrap();
    }
    Ok(Outcome::ok(s))
}

#[derive(Serialize)]
struct ScantorReport {
    pair: String,
    class: TopologyClass,
    conditions: SConditions,
    #[serde(rename = "L")]
    l: IntRange,
    #[serde(rename = "R")]
    r: IntRange,
    digits: DigitSet,
}

pub fn scantor_classify(p1: &SCantorParams, p2: &SCantorParams, format: Format) -> cantorval::Result<Outcome> {
    let (l, r) = lr_sets(p1, p2)?;
    let report = ScantorReport {
        pair: format!("{p1} - {p2}"),
        class: scantor::classify(p1, p2)?,
        conditions: scantor::conditions(p1, p2)?,
        l,
        r,
        digits: ds_diff(&digit_set_of(p1), &digit_set_of(p2))?,
    };
    if format == Format::Json {
        return Ok(Outcome::ok(to_json("scantor classify", report)));
    }
    let c = &report.conditions;
    let mut s = String::new();
    writeln!(s, "pair: {}", report.pair).unwrap();
    writeln!(s, "class: {}", report.class).unwrap();
    writeln!(
        s,
        "conditions: S1={} S2={} S3={} S1*={} S2*={}",
        c.s1, c.s2, c.s3, c.s1_star, c.s2_star
    )
    .unwrap();
    writeln!(s, "L: {}", report.l).unwrap();
    writeln!(s, "R: {}", report.r).unwrap();
    writeln!(s, "digits: {}", report.digits).unwrap();
    Ok(Outcome::ok(s))
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CANTORVAL_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("CANTORVAL_THREADS must be a positive integer, got {v:?}"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct SweepRow {
    l1: i64,
    r1: i64,
    l2: i64,
    r2: i64,
    p: i64,
    class: TopologyClass,
}

pub fn scantor_sweep(p_max: i64) -> Result<Outcome, String> {
    let pairs = all_pairs(p_max);
    let pool = thread_pool()?;
    let rows: Vec<SweepRow> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(a, b)| {
                Ok(SweepRow { l1: a.l(), r1: a.r(), l2: b.l(), r2: b.r(), p: a.p(), class: scantor::classify(a, b)? })
            })
            .collect::<cantorval::Result<Vec<_>>>()
    })
    .map_err(|e| e.to_string())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| e.to_string())?;
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    Ok(Outcome::ok(String::from_utf8(bytes).expect("csv output is utf-8")))
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    passed: bool,
    #[serde(flatten)]
    report: &'a CrosscheckReport,
}

fn verify_outcome(command: &'static str, report: CrosscheckReport, format: Format) -> Outcome {
    let passed = report.passed();
    let body = if format == Format::Json {
        to_json(command, VerifyReport { passed, report: &report })
    } else {
        let mut s = String::new();
        writeln!(s, "subject: {}", report.subject).unwrap();
        writeln!(s, "verdict: {}", report.verdict).unwrap();
        writeln!(s, "depth: {}", report.depth).unwrap();
        for c in &report.checks {
            writeln!(s, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail).unwrap();
        }
        writeln!(s, "certificates: {}", report.certificates.len()).unwrap();
        let failed = report.failures().count();
        writeln!(s, "result: {} ({} of {} checks failed)", if passed { "pass" } else { "fail" }, failed, report.checks.len())
            .unwrap();
        s
    };
    Outcome { body, code: if passed { 0 } else { 1 } }
}

pub fn verify_scantor(p1: &SCantorParams, p2: &SCantorParams, depth: usize, format: Format) -> cantorval::Result<Outcome> {
    Ok(verify_outcome("verify scantor", crosscheck_scantor(p1, p2, depth)?, format))
}

pub fn verify_central(a: &CentralCantor, b: &CentralCantor, budget: u64, depth: usize, format: Format) -> cantorval::Result<Outcome> {
    let verdict = central::classify(a, b, budget);
    Ok(verify_outcome("verify central", crosscheck_central(a, b, &verdict, depth)?, format))
}
