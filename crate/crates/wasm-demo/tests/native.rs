use bracket_wasm_demo::{cascade_json, cosets_json, interval_bracket_json};
use serde_json::Value;

fn parse(s: Result<String, String>) -> Value {
    serde_json::from_str(&s.unwrap()).unwrap()
}

#[test]
fn quincunx_cosets() {
    let v = parse(cosets_json("[[1,1],[1,-1]]"));
    assert_eq!(v["index"], 2);
    assert_eq!(v["cosets"].as_array().unwrap().len(), 2);
    assert!(cosets_json("[[1]]").is_err());
    assert!(cosets_json("nope").is_err());
}

#[test]
fn unit_interval_bracket_is_a_delta() {
    let v = parse(interval_bracket_json(0.0, 1.0, 0.0, 1.0, 0, 64));
    assert_eq!(v["taps"], serde_json::json!([[0, 1.0]]));
    let symbol = v["symbol"].as_array().unwrap();
    assert_eq!(symbol.len(), 64);
    assert!(symbol.iter().all(|s| (s.as_f64().unwrap() - 1.0).abs() < 1e-15));
}

#[test]
fn interval_bracket_at_a_finer_level() {
    // translates by 1/2: overlaps of [0,1) with [k/2, k/2 + 1)
    let v = parse(interval_bracket_json(0.0, 1.0, 0.0, 1.0, 1, 8));
    let taps: Vec<(i64, f64)> = serde_json::from_value(v["taps"].clone()).unwrap();
    assert_eq!(taps, vec![(-1, 0.5), (0, 1.0), (1, 0.5)]);
    assert!(interval_bracket_json(1.0, 0.0, 0.0, 1.0, 0, 8).is_err());
}

#[test]
fn db4_cascade_settles() {
    let v = parse(cascade_json("db4", 8));
    let steps: Vec<f64> = serde_json::from_value(v["step_norms"].clone()).unwrap();
    assert_eq!(steps.len(), 8);
    assert!(steps[7] < steps[0]);
    assert_eq!(v["x"].as_array().unwrap().len(), v["phi"].as_array().unwrap().len());
    assert!(cascade_json("shannon", 3).is_err());
    assert!(cascade_json("db4", 0).is_err());
}
