use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn extlab(args: &[&str]) -> (bool, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_extlab"))
        .arg("--format")
        .arg("json")
        .args(args)
        .output()
        .expect("binary runs");
    let report = serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    (out.status.success(), report)
}

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("extlab-{}-{name}", std::process::id()))
}

fn failed(report: &Value) -> Vec<&str> {
    report["assertions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| !a["passed"].as_bool().unwrap())
        .map(|a| a["name"].as_str().unwrap())
        .collect()
}

#[test]
fn cohomology_of_z2() {
    let (ok, r) = extlab(&["cohomology", "Z2", "Z/2", "2"]);
    assert!(ok);
    assert_eq!(r["results"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(r["results"]["order"], 2);
}

#[test]
fn two_extensions_of_z2_by_z2() {
    let (ok, r) = extlab(&["extensions", "Z2", "Z2"]);
    assert!(ok);
    assert_eq!(r["results"]["classes"], 2);
}

#[test]
fn malformed_table_is_rejected() {
    let path = scratch("bad.json");
    std::fs::write(&path, r#"{"order":2,"table":[[0,1],[1,1]]}"#).unwrap();
    let (ok, r) = extlab(&["cohomology", path.to_str().unwrap(), "Z", "1"]);
    std::fs::remove_file(&path).ok();
    assert!(!ok);
    assert!(r["error"].as_str().unwrap().contains("not a group"));
    assert!(r["results"].is_null());
}

#[test]
fn abelian_kernel_has_zero_obstruction() {
    let (ok, r) = extlab(&["obstruction", "Z2", "Z3", "[0,1]"]);
    assert!(ok);
    assert_eq!(r["results"][0]["class_zero"], true);
}

#[test]
fn non_homomorphic_action_is_an_error() {
    let (ok, r) = extlab(&["obstruction", "Z2", "Z3", "[1,0]"]);
    assert!(!ok);
    assert!(r["error"].as_str().unwrap().contains("not a homomorphism"));
}

#[test]
fn sigma2_defect_grows() {
    let (ok, r) = extlab(&["defect", "heis_sigma2"]);
    assert!(ok);
    let growth: Vec<u64> = r["results"]["growth"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(growth.len(), 10);
    assert!(growth.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn heisenberg_example_reports_the_stated_formula() {
    for name in ["heis_by_heis", "exmp_5_2"] {
        let (ok, r) = extlab(&["example", name]);
        assert!(!ok);
        assert_eq!(failed(&r), vec!["sigma2_defect_stated_formula"]);
    }
}

#[test]
fn same_seed_same_results() {
    let a = extlab(&["--seed", "7", "obstruction", "Z2", "Q8", "all"]).1;
    let b = extlab(&["--seed", "7", "obstruction", "Z2", "Q8", "all"]).1;
    assert_eq!(a["results"], b["results"]);
    assert_eq!(a["assertions"], b["assertions"]);
}

#[test]
fn out_writes_the_report() {
    let path = scratch("report.json");
    let (ok, r) = extlab(&["--out", path.to_str().unwrap(), "realize", "Z2", "Z/2", "class:1"]);
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(ok);
    assert_eq!(written["results"], r["results"]);
}

#[test]
fn selftest_passes() {
    let (ok, r) = extlab(&["selftest"]);
    assert!(ok, "{:?}", failed(&r));
    assert!(!r["assertions"].as_array().unwrap().is_empty());
}
