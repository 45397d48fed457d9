use std::io::Write;
use std::process::{Command, Output};

fn magnus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_magnus")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn check_m9_json() {
    let o = magnus(&["check", "M9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["expr"], "M9");
    assert_eq!(v["order"], 72);
    assert_eq!(v["mp"], true);
    assert_eq!(v["smp"], true);
    assert!(v["witness"].is_null());
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
    assert!(keys.contains(&"aCount") && keys.contains(&"bCount") && keys.contains(&"allReal"));
}

#[test]
fn json_field_order_is_fixed() {
    let s = stdout(&magnus(&["check", "S3", "--json"]));
    let pos = |k: &str| s.find(&format!("\"{k}\"")).unwrap();
    let order = ["schema", "expr", "order", "mp", "smp", "aCount", "bCount", "allReal", "witness"];
    assert!(order.windows(2).all(|w| pos(w[0]) < pos(w[1])), "{s}");
}

#[test]
fn check_c12_reports_a_witness() {
    let o = magnus(&["check", "C(12)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("mp        false"), "{s}");
    assert!(s.contains("witness   elements"), "{s}");
    let v: serde_json::Value = serde_json::from_str(&stdout(&magnus(&["check", "C12", "--json"]))).unwrap();
    let w = v["witness"].as_array().unwrap();
    assert_eq!(w.len(), 2);
    assert_ne!(w[0], w[1]);
}

#[test]
fn verify_power23_passes() {
    let o = magnus(&["verify", "power23"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("status  Pass"));
}

#[test]
fn verify_json_is_reproducible() {
    let a = stdout(&magnus(&["verify", "degree-bound", "--json"]));
    let b = stdout(&magnus(&["verify", "degree-bound", "--json", "--jobs", "2"]));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["status"], "pass");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(magnus(&["check", "C("]).status.code(), Some(2));
    assert_eq!(magnus(&["verify", "no-such-claim"]).status.code(), Some(2));
    assert_eq!(magnus(&["frobnicate"]).status.code(), Some(2));
    let o = magnus(&["check", "C("]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("offset 2"));
}

#[test]
fn caps_exit_three() {
    // 9! is above the permutation closure cap.
    assert_eq!(magnus(&["check", "S(9)"]).status.code(), Some(3));
    // Order 4096 is above the subgroup-lattice cap.
    let o = magnus(&["invariants", "E(2,12)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("not computed"));
}

#[test]
fn invariants_table() {
    let o = magnus(&["invariants", "S(4)"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("order           24"));
    assert!(s.contains("fitting height  3"));
    assert!(s.contains("chief factors   4 3 2"), "{s}");
    assert!(s.contains("primitive       true"));
    assert!(s.contains("|Phi(G)|        1"));
}

#[test]
fn cayley_file_input() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# C3\n0 1 2\n1 2 0\n2 0 1").unwrap();
    let expr = format!("Cayley(\"{}\")", f.path().display());
    let v: serde_json::Value = serde_json::from_str(&stdout(&magnus(&["check", &expr, "--json"]))).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["mp"], true);
    assert_eq!(v["smp"], false);
}

#[test]
fn search_rows_are_json() {
    let o = magnus(&["search", "gammal1", "--q", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(!v.as_array().unwrap().is_empty());
    assert_eq!(magnus(&["search", "gammal1", "--q", "6"]).status.code(), Some(2));
}
