//! Report determinism and exact serialization.

use num_rational::BigRational;
use serde_json::Value;

use skewsort::serde_exact::parse_rational;
use skewsort::sorting::{delta_poset, q_sequence};
use skewsort::verify::{run_suite, SuiteParams, Verdict, SUITES};
use skewsort::{Partition, SkewShape};

fn small(name: &str) -> SuiteParams {
    let mut map = std::collections::BTreeMap::new();
    let n = match name {
        "two_chain" => 40,
        "n2_family" | "thick_scaling" | "tvk_scaling" => return SuiteParams { m_max: Some(12), ..SuiteParams::default() },
        "inequality_suite" => {
            map.insert("grid".to_string(), "500".to_string());
            6
        }
        _ => 7,
    };
    map.insert("n_max".to_string(), n.to_string());
    map.insert("seed".to_string(), "3".to_string());
    SuiteParams::from_map(&map).unwrap()
}

#[test]
fn every_suite_is_deterministic_and_passes_small_corpora() {
    for name in SUITES {
        let p = small(name);
        let a = run_suite(name, &p).unwrap();
        let b = run_suite(name, &p).unwrap();
        assert_eq!(a.to_json(), b.to_json(), "{name} is not deterministic");
        assert_eq!(a.to_csv(), b.to_csv());
        assert_ne!(a.verdict, Verdict::Fail, "{name}: {:?}", a.violations);
        assert!(a.instances > 0, "{name} ran on an empty corpus");
    }
}

#[test]
fn report_json_round_trips_exact_values() {
    let r = run_suite("sandwich", &SuiteParams::with_n_max(7)).unwrap();
    let v: Value = serde_json::from_str(&r.to_json()).unwrap();
    for (e, j) in r.extrema.iter().zip(v["extrema"].as_array().unwrap()) {
        let exact = j["value"].as_str().and_then(parse_rational);
        assert_eq!(exact, e.value.as_deref().and_then(parse_rational));
        if let Some(x) = exact {
            assert!((skewsort::arith::to_f64(&x) - e.value_approx).abs() < 1e-12);
        }
    }
}

#[test]
fn library_records_serialize_exact_strings() {
    let rep = delta_poset(&SkewShape::from_parts(&[3, 3], &[])).unwrap();
    let v = serde_json::to_value(&rep).unwrap();
    assert_eq!(v["delta"], "1/5");
    let q = q_sequence(&"[3,2,1]".parse::<Partition>().unwrap()).unwrap();
    let v = serde_json::to_value(&q).unwrap();
    let back: Vec<BigRational> = v["values"].as_array().unwrap().iter().map(|s| parse_rational(s.as_str().unwrap()).unwrap()).collect();
    assert_eq!(back, q.values);
}

#[test]
fn unknown_names_are_rejected() {
    assert!(run_suite("missing", &SuiteParams::default()).is_err());
    let mut map = std::collections::BTreeMap::new();
    map.insert("colour".to_string(), "blue".to_string());
    assert!(SuiteParams::from_map(&map).is_err());
}
