use std::process::{Command, Output};

use serde_json::Value;

fn nilws(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilws")).args(args).output().expect("run nilws")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const DIM6: &str = r#"{"kind":"dim6_theta","theta":0.7853981633974483}"#;
const DIM7: &str = r#"{"kind":"dim7_theta","theta":0.7853981633974483}"#;

#[test]
fn build_prints_dimensions() {
    let o = nilws(&["build", "--spec", DIM6]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("dim V = 6"), "{s}");
    assert!(s.contains("dim 𝔞 = 8"), "{s}");
}

#[test]
fn build_writes_a_loadable_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pair.json");
    let o = nilws(&["build", "--spec", DIM6, "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let pair: nilws::MetricPair = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((pair.dim_v(), pair.dim_a()), (6, 8));
}

#[test]
fn malformed_spec_is_a_usage_error() {
    assert_eq!(nilws(&["build", "--spec", "{not json"]).status.code(), Some(1));
    assert_eq!(nilws(&["build", "--spec", "/nonexistent/spec.json"]).status.code(), Some(1));
    assert_eq!(nilws(&["build"]).status.code(), Some(1));
    assert_eq!(nilws(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn spec_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("spec.json");
    std::fs::write(&path, DIM6).unwrap();
    assert_eq!(nilws(&["build", "--spec", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn parallel_blocks_build_with_warning() {
    let o = nilws(&["build", "--spec", r#"{"kind":"dim2","a":[[1,0,0],[1,0,0]],"b":[[2,0,0],[0,1,0]]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("singular family degeneration"));
}

#[test]
fn verify_main_family_a() {
    let o = nilws(&["verify-ws", "--spec", r#"{"kind":"clifford","case":"a","p":2,"dim":2}"#, "--samples", "20"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("verdict: Ws"));
}

#[test]
fn verify_dim7_matches_not_ws() {
    let o = nilws(&["verify-ws", "--spec", DIM7, "--samples", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "not_ws");
    assert_eq!(v["family"], "dim7_theta");
    assert!(v["samples"].as_array().unwrap().len() == 4);
    assert!(v["obstructions"]["dim7"]["necessary_conditions_violated"].as_bool().unwrap());
}

#[test]
fn zero_samples_is_inconclusive() {
    let o = nilws(&["verify-ws", "--spec", DIM6, "--samples", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reports_are_byte_identical_and_embed_config() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let args = ["verify-ws", "--spec", DIM6, "--samples", "8", "--seed", "42", "--tol", "witness=1e-9", "--out", path.to_str().unwrap()];
    let o1 = Command::new(env!("CARGO_BIN_EXE_nilws")).args(args).output().unwrap();
    assert_eq!(o1.status.code(), Some(0));
    let sa = std::fs::read(&path).unwrap();
    let o2 = Command::new(env!("CARGO_BIN_EXE_nilws")).args(args).env("NILWS_THREADS", "1").output().unwrap();
    assert_eq!(o2.status.code(), Some(0));
    let sb = std::fs::read(&path).unwrap();
    assert_eq!(sa, sb);
    let v: Value = serde_json::from_slice(&sa).unwrap();
    assert_eq!(v["seed"], 42);
    assert_eq!(v["run"]["tolerances"]["witness"], 1e-9);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn tolerance_below_floor_rejected() {
    let o = nilws(&["verify-ws", "--spec", DIM6, "--tol", "witness=1e-20"]);
    assert_eq!(o.status.code(), Some(1));
    let o = nilws(&["verify-ws", "--spec", DIM6, "--tol", "nonsense"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn catalog_default_matches() {
    let o = nilws(&["catalog", "--samples", "6", "--json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["result"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 5);
    assert!(rows.iter().all(|r| r["matches"] == true));
}

#[test]
fn catalog_with_non_standard_entry4() {
    let o = nilws(&["catalog", "--samples", "4", "--entry4-tail", "[[1,0],[0,2]]", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let row4 = &v["result"]["rows"][3];
    assert_eq!(row4["expected_verdict"], "not_ws");
    assert_eq!(row4["computed"]["verdict"], "not_ws");
}

#[test]
fn catalog_text_has_five_rows() {
    let o = nilws(&["catalog", "--samples", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.ends_with("yes")).count(), 5);
}

#[test]
fn normalizer_and_nonsingular() {
    let o = nilws(&["normalizer", "--spec", r#"{"kind":"dim3_scaled","lambda":[1],"mu":[1]}"#]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim 𝔫 = 6"));
    let o = nilws(&["nonsingular", "--spec", r#"{"kind":"section5_case","case":5}"#, "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["verdict"]["status"], "singular_with_witness");
}

#[test]
fn obstruct_dim7_reports_violation() {
    let o = nilws(&["obstruct-dim7", "--samples", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["result"]["necessary_conditions_violated"].as_bool().unwrap());
    assert!(v["result"]["search_failures"].as_array().unwrap().iter().all(|f| f["best"].as_f64().unwrap() >= 1e-4));
}
