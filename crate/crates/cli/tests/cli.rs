use std::process::{Command, Output};

use serde_json::Value;

fn tqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqft")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = tqft(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn coeffs(v: &Value) -> Vec<String> {
    v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect()
}

// sqrt 2 = z16^2 - z16^6 in the power basis of Q(zeta_16)
fn sqrt2() -> Vec<String> {
    ["0", "0", "1", "0", "0", "0", "-1", "0"].iter().map(|s| s.to_string()).collect()
}

#[test]
fn unknot_colored_two_is_sqrt2() {
    let v = json(&["eval", "--builtin", "unknot", "--colors", "2"]);
    assert_eq!(coeffs(&v["value"]), sqrt2());
    let re = v["value_approx"][0].as_f64().unwrap();
    assert!((re - 2f64.sqrt()).abs() < 1e-12);
}

#[test]
fn whitehead_arf() {
    let v = json(&["arf", "--builtin", "whitehead"]);
    let minus: Vec<String> = sqrt2().iter().map(|c| if c == "0" { c.clone() } else { format!("{}", -c.parse::<i64>().unwrap()) }).collect();
    assert_eq!(coeffs(&v["I"]), minus);
    assert_eq!(v["proper"], true);
    assert_eq!(v["epsilon"], 1);
    let other = json(&["arf", "--builtin", "whitehead", "--strategy", "last-bad-reversed"]);
    assert_eq!(other["I"], v["I"]);
}

#[test]
fn whitehead_report() {
    let v = json(&["whitehead"]);
    for key in ["matrix", "determinant", "rank", "limit_rank", "z_infinity_dim", "anomaly", "framing"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["framing"], serde_json::json!([0, 0]));
    assert_eq!(v["rank"], 2);
    assert_eq!(v["z_infinity_dim"], 2);
    assert_eq!(v["anomaly"]["c_power"], -3);
}

#[test]
fn surgery_on_the_zero_framed_unknot() {
    let v = json(&["rt", "--builtin", "unknot", "--framing", "0"]);
    assert_eq!(v["value_approx"][0].as_f64().unwrap(), 2.0);
    let approx = json(&["rt", "--builtin", "unknot", "--framing", "0", "--level", "5", "--approx"]);
    assert!((approx["value_approx"][0].as_f64().unwrap() - 2.68999).abs() < 1e-4);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(tqft(&["eval", "--builtin", "no-such-link"]).status.code(), Some(2));
    assert_eq!(tqft(&["eval", "--file", "/nonexistent/diagram.txt"]).status.code(), Some(2));
    let dir = std::env::temp_dir().join(format!("tqft-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.txt");
    std::fs::write(&bad, "cup 0 rl\ncap 0 lr\nwobble 3\n").unwrap();
    let out = tqft(&["eval", "--file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn domain_errors_exit_with_three() {
    assert_eq!(tqft(&["eval", "--builtin", "unknot", "--level", "5", "--exact"]).status.code(), Some(3));
    assert_eq!(tqft(&["transfer", "--builtin", "trefoil"]).status.code(), Some(3));
}

#[test]
fn output_is_deterministic() {
    let a = tqft(&["transfer", "--builtin", "hopf"]);
    let b = tqft(&["transfer", "--builtin", "hopf"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn selftest_passes() {
    let v = json(&["selftest"]);
    assert_eq!(v["failed"], 0);
}
