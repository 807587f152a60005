use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use diffres::diffsys::SystemSpec;
use diffres::macaulay::{self, PolyMatrix};
use serde_json::Value;

fn diffres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffres")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffres-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn sizes_suite_passes() {
    let o = diffres(&["check", "--suite", "sizes"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS [1] sizes"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(diffres(&["check", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(diffres(&["det", "--d1", "3", "--d2", "1"]).status.code(), Some(2));
    assert_eq!(diffres(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(diffres(&["carra-ferro", "--n", "2"]).status.code(), Some(2));
}

#[test]
fn certificate_json() {
    let v = json_of(&diffres(&["certificate", "--json"]));
    assert_eq!(v["exponents"], serde_json::json!([10, 10, 10, 6]));
    assert_eq!(v["unique_monomial"], "a(0,2)^10*a(2,0)^10*b(0,0)^6*b(0,2)'^10");
    assert!(v["normalized_coefficient"] == "1" || v["normalized_coefficient"] == "-1");
}

#[test]
fn carra_ferro_reports_zero_column() {
    let v = json_of(&diffres(&["carra-ferro", "--json"]));
    assert_eq!((v["rows"].as_u64(), v["cols"].as_u64()), (Some(80), Some(56)));
    assert_eq!(v["zero_columns"], serde_json::json!(["y2^5"]));
}

#[test]
fn export_round_trips() {
    let o = diffres(&["export", "--d1", "1", "--d2", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let (m, spec) = PolyMatrix::from_json(&json_of(&o)).unwrap();
    assert_eq!(spec, serde_json::json!({ "d1": 1, "d2": 2 }));
    assert_eq!(m, macaulay::build_square_matrix(&SystemSpec::new(1, 2).unwrap()).unwrap());
}

#[test]
fn determinant_from_specialization_file() {
    // f1 = y1 + 1, f2 = y1 + y, derived symbols zero
    let mut obj = serde_json::Map::new();
    for s in SystemSpec::new(1, 1).unwrap().symbol_universe() {
        obj.insert(s.to_string(), Value::String("0".into()));
    }
    for k in ["a(0,1)", "a(0,0)", "b(0,1)", "b(1,0)"] {
        obj.insert(k.into(), Value::String("1".into()));
    }
    let path = temp_file("unit.json", &Value::Object(obj.clone()).to_string());
    let o = diffres(&["det", "--d1", "1", "--d2", "1", "--specialization", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: i64 = stdout(&o).trim().parse().unwrap();
    assert_eq!(v.abs(), 1);

    let csv = diffres(&["export", "--d1", "1", "--d2", "1", "--format", "csv", "--specialization", path.to_str().unwrap()]);
    assert!(stdout(&csv).lines().next().unwrap().contains("y^0*y1^0*y2^1"));

    obj.insert("c(9,9)".into(), Value::String("1".into()));
    let bad = temp_file("bad.json", &Value::Object(obj).to_string());
    assert_eq!(diffres(&["det", "--d1", "1", "--d2", "1", "--specialization", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn seeded_runs_are_deterministic() {
    let a = diffres(&["det", "--d1", "1", "--d2", "2", "--seed", "5"]);
    let b = diffres(&["det", "--d1", "1", "--d2", "2", "--seed", "5"]);
    assert_eq!(stdout(&a), stdout(&b));
    let m = diffres(&["det", "--d1", "1", "--d2", "2", "--seed", "5", "--mode", "modular", "--moduli", "3", "--json"]);
    assert_eq!(json_of(&m)["value"].as_array().map(Vec::len), Some(3));
}

#[test]
fn lp_partition_and_moves() {
    let o = diffres(&["lp-partition"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 36);
    assert!(lines.iter().all(|l| l["basis"].is_string()));

    let v = json_of(&diffres(&["moves"]));
    assert_eq!(v["raw_sizes"], serde_json::json!([6, 10, 8, 12]));
    assert_eq!(v["equals_divisibility_partition"], true);

    let moves = temp_file("moves.json", r#"[{"monomial": [0, 0, 0], "from": 2, "to": 1}]"#);
    assert_eq!(diffres(&["moves", "--moves", moves.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn config_supplies_lp_defaults() {
    let cfg = temp_file(
        "lp.toml",
        "liftings = [7, -4, -5, 5, -9, 5, 6, 2, 1, 8, 4, 7]\ndelta = [\"1/100\", \"1/100\", \"1/100\"]\n",
    );
    let o = diffres(&["--config", cfg.to_str().unwrap(), "moves"]);
    assert_eq!(json_of(&o)["raw_sizes"], serde_json::json!([6, 10, 8, 12]));
    let bad = temp_file("bad.toml", "delta = [\"2\", \"0\", \"1/2\"]\n");
    assert_eq!(diffres(&["--config", bad.to_str().unwrap(), "moves"]).status.code(), Some(2));
}

#[test]
fn symbolic_oracle_is_a_multiple_of_the_determinant() {
    let v = json_of(&diffres(&["oracle", "--d1", "1", "--d2", "1"]));
    assert_eq!(v["oracle_over_det"], "a(0,1)");
}
