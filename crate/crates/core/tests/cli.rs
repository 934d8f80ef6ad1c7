use std::process::Command;

use serde_json::Value;
use skewsort::serde_exact::parse_rational;

fn skewsort(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_skewsort")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf8"))
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let (code, out) = skewsort(&all);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).expect("valid json")
}

#[test]
fn count_examples() {
    let v = json(&["count", "[3,3]", "--method", "all"]);
    assert_eq!(v["results"]["value"], "5");
    assert_eq!(v["results"]["agree"], true);
    let paths = json(&["count", "[5,5,4,2]/[3,2]", "--method", "paths"]);
    let det = json(&["count", "[5,5,4,2]/[3,2]", "--method", "det"]);
    assert_eq!(paths["results"]["value"], det["results"]["value"]);
    assert_eq!(skewsort(&["count", "[2,1]/[3]"]).0, 2);
    assert_eq!(skewsort(&["count", "[3,3]/[1]", "--method", "hlf"]).0, 2);
}

#[test]
fn delta_examples() {
    let v = json(&["delta", "[3,3]"]);
    assert_eq!(v["results"]["delta"], "1/5");
    assert_eq!(v["results"]["witnesses"][0], serde_json::json!([[1, 2], [2, 1]]));
    assert_eq!(json(&["delta", "[3,1]/[1]", "--pair", "2,1", "1,2"])["results"]["delta"], "1/3");
    assert_eq!(json(&["delta", "[4,1]/[1]"])["results"]["delta"], "0");
    let phi = json(&["delta", "[6,6]", "--phi", "3"]);
    assert_eq!(phi["results"]["delta_within_bound"], true);
    assert_eq!(skewsort(&["delta", "[3,3]", "--pair", "0,1", "1,2"]).0, 2);
}

#[test]
fn pairprob_and_bound() {
    let v = json(&["pairprob", "[3,3]", "1,2", "2,1"]);
    assert_eq!(v["results"]["prob_before"], "3/5");
    let b = json(&["bound", "[4,2]/[2,1]"]);
    assert_eq!(b["results"]["interval_bound"]["bound"], "10/3");
    assert_eq!(b["results"]["f_over_F"], "1");
    assert_eq!(b["results"]["k_value"], "5/3");
    assert_eq!(skewsort(&["bound", "[4,2]", "--blocks", "1,1"]).0, 2);
}

#[test]
fn sampling_commands_are_reproducible() {
    let args = ["sample", "[3,3]", "--trials", "100000", "--seed", "7", "--json"];
    let (c1, a) = skewsort(&args);
    let (c2, b) = skewsort(&args);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["results"]["distinct"], 5);
    let total: u64 = v["results"]["frequencies"].as_array().unwrap().iter().map(|r| r["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 100_000);
    assert!(v["results"]["p_value_approx"].as_f64().unwrap() > 0.001);

    let mc = json(&["mc", "[3,3]", "--pair", "1,2", "2,1", "--trials", "20000", "--seed", "5"]);
    assert_eq!(mc["results"]["exact"], "3/5");
    assert_eq!(mc["results"]["covers_exact"], true);
    let c = json(&["mc", "[3,3]", "--event-c", "--trials", "20000"]);
    assert_eq!(c["results"]["exact"], "5/64");
    assert_eq!(skewsort(&["mc", "[3,1]/[1,1]", "--event-c"]).0, 2);
}

#[test]
fn classify_examples() {
    let v = json(&["classify", "--lambda", "[4,4]", "--gamma", "[2,2]", "--eps", "1/4"]);
    assert_eq!(v["results"]["pair_admissible"], true);
    assert_eq!(v["results"]["p"], "1/2");
    assert_eq!(v["results"]["offsets"], serde_json::json!(["0", "0"]));
    let v = json(&["classify", "--lambda", "[4,4]", "--gamma", "[2,2]", "--mu", "[1,1]", "--eps", "1/2"]);
    assert_eq!(v["results"]["pair_admissible"], false);
    assert_eq!(skewsort(&["classify", "--lambda", "[2]", "--gamma", "[3]"]).0, 2);
}

#[test]
fn verify_reports() {
    let (code, out) = skewsort(&["verify", "one_third", "--n-max", "12", "--json"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "PASS");
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    let max = v["extrema"].as_array().unwrap().iter().find(|e| e["name"] == "max_delta").unwrap();
    assert_eq!(parse_rational(max["value"].as_str().unwrap()), parse_rational("1/3"));

    let (code, csv) = skewsort(&["verify", "sandwich", "--n-max", "6", "--csv"]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("suite,verdict,instances,violations\nsandwich,PASS,"));

    let (code, _) = skewsort(&["verify", "conjecture_ratio", "--n-max", "8", "d_max=3"]);
    assert_eq!(code, 0);
    assert_eq!(skewsort(&["verify", "nope"]).0, 2);
    assert_eq!(skewsort(&["verify", "one_third", "eps=2"]).0, 2);
}

#[test]
fn scan_emits_exact_columns() {
    let (code, out) = skewsort(&["scan", "catalan", "--m", "2..30"]);
    assert_eq!(code, 0);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    assert_eq!(&headers[0], "n");
    assert_eq!(&headers[3], "sqrt_n_delta_approx");
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 29);
    for r in &rows {
        let n: f64 = r[0].parse().unwrap();
        let num: f64 = r[1].parse().unwrap();
        let den: f64 = r[2].parse().unwrap();
        let approx: f64 = r[3].parse().unwrap();
        assert!((n.sqrt() * num / den - approx).abs() < 1e-9);
    }
    let (code, out) = skewsort(&["scan", "rect(2:1)", "--m", "1..5"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"[4,2]/[]\""));
    assert_eq!(skewsort(&["scan", "tvk(1/2,1/3)", "--m", "1..3"]).0, 2);
    assert_eq!(skewsort(&["scan", "catalan", "--m", "9..3"]).0, 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(skewsort(&[]).0, 2);
    assert_eq!(skewsort(&["count"]).0, 2);
    assert_eq!(skewsort(&["--help"]).0, 0);
}
