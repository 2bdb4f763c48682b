use std::process::{Command, Output};

use cantorval::scantor::pair_count;

fn cantorval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cantorval")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = cantorval(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn central_examples() {
    let v = json(&["central", "classify", ";1/2,1/4", ";1/4,1/2"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "full_interval");
    assert_eq!(v["thickness"]["product"], "1/4");
    assert_eq!(v["newhouse"], false);
    assert_eq!(v["conditions"].as_array().unwrap().len(), 2);

    assert_eq!(json(&["central", "classify", ";1/3", ";1/3"])["verdict"], "full_interval");

    let half = json(&["central", "classify", ";1/2", ";1/2"]);
    assert_eq!(half["detail"]["not_full_interval"], true);
    assert_eq!(half["detail"]["not_finite_union"], true);
}

#[test]
fn inconclusive_exits_cleanly() {
    let out = cantorval(&["central", "classify", "1/3,1/3", "1/3,1/3", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "inconclusive");
}

#[test]
fn scantor_examples() {
    let m = stdout(&cantorval(&["scantor", "classify", "2", "2", "2", "2", "7"]));
    assert!(m.contains("class: MCantorval"), "{m}");
    let l = json(&["scantor", "classify", "3", "2", "1", "3", "7"]);
    assert_eq!(l["class"], "LCantorval");
    assert_eq!(l["L"], serde_json::json!([]));
    assert_eq!(l["R"], serde_json::json!([3, 4]));
    assert_eq!(l["conditions"]["s1_star"], true);
}

#[test]
fn sweep_rows() {
    let out = cantorval(&["scantor", "sweep", "--p-max", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("l1,r1,l2,r2,p,class"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), pair_count(5));
    assert!(rows.contains(&"1,1,2,1,4,FullInterval"));
}

#[test]
fn sweep_is_deterministic_across_thread_counts() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_cantorval"))
            .args(["scantor", "sweep", "--p-max", "8"])
            .env("CANTORVAL_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(String::from_utf8(one).unwrap().lines().count(), pair_count(8) + 1);
}

#[test]
fn bad_thread_count_is_rejected() {
    let out = Command::new(env!("CARGO_BIN_EXE_cantorval"))
        .args(["scantor", "sweep", "--p-max", "4"])
        .env("CANTORVAL_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes_on_correct_classifications() {
    let out = cantorval(&["verify", "scantor", "2", "2", "2", "2", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let v = json(&["verify", "scantor", "1", "2", "2", "1", "5"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["verdict"], "MCantorval");
    let c = json(&["verify", "central", ";1/2,1/4", ";1/4,1/2", "--depth", "4"]);
    assert_eq!(c["passed"], true);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["central", "classify", "1/2;x", ";1/2"],
        vec!["central", "classify", ";3/2", ";1/2"],
        vec!["scantor", "classify", "4", "3", "1", "1", "7"],
        vec!["scantor", "classify", "1", "1", "1", "1", "5", "--format", "svg"],
        vec!["render", "p=7:{-9,0}"],
        vec!["render", "q=7"],
        vec!["scantor", "bogus"],
    ] {
        assert_eq!(cantorval(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn render_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("render.svg");
    let out = cantorval(&["render", "p=7:{-6,-5,-4,-1,0,1,4,5,6}", "--svg", "-o", svg.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&svg).unwrap();
    assert!(body.starts_with("<svg"));
    assert_eq!(body.matches("<g data-depth=").count(), 6);

    let csv = dir.path().join("cover.csv");
    let out = cantorval(&["render", "p=3:{0,2}", "--depth", "2", "--csv", "-o", csv.to_str().unwrap()]);
    assert!(out.status.success());
    let body = std::fs::read_to_string(&csv).unwrap();
    assert!(body.starts_with("depth,lo,hi\n0,0,1\n"));
    assert_eq!(body.lines().count(), 1 + 1 + 2 + 4);
}

#[test]
fn reports_are_byte_stable() {
    let args = ["central", "classify", "1/4,1/40,1/40", "3/20,1/40,10/11", "--format", "json"];
    assert_eq!(cantorval(&args).stdout, cantorval(&args).stdout);
}
