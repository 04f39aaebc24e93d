use std::process::{Command, Output};

use serde_json::Value;

fn wichtel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wichtel"))
        .args(args)
        .env_remove("WICHTEL_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = wichtel(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn count_examples() {
    assert_eq!(stdout(&["count", "--n", "7", "--what", "PN"]), "714\n");
    assert_eq!(stdout(&["count", "--n", "3", "--what", "PN"]), "0\n");
    assert_eq!(stdout(&["count", "--n", "6", "--what", "PNk", "--k", "3"]), "15\n");
    assert_eq!(stdout(&["count", "--n", "10", "--what", "FN"]), "1334961\n");
    assert_eq!(stdout(&["count", "--n", "5", "--what", "g3"]), "24\n");
}

#[test]
fn count_json_lists_every_method() {
    let v = json(&["--format", "json", "count", "--n", "9", "--what", "PN"]);
    assert_eq!(v["value"], "52632");
    let methods = v["methods"].as_object().unwrap();
    for m in ["recurrence", "subtraction", "first_recursion", "explicit", "typesum"] {
        assert_eq!(methods[m], "52632", "{m}");
    }
}

#[test]
fn counts_are_decimal_strings_beyond_u64() {
    let v = json(&["count", "--n", "30", "--what", "FN", "--format", "json"]);
    assert_eq!(v["value"], "97581073836835777732377428235481");
}

#[test]
fn types_and_type_count() {
    assert_eq!(
        stdout(&["count", "--n", "7", "--what", "types"]),
        "(0,1,0,0,1,0,0) 504\n(0,2,1,0,0,0,0) 210\n"
    );
    let v = json(&["count", "--n", "7", "--what", "type_count", "--format", "json"]);
    assert_eq!(v["value"], "2");
    assert_eq!(v["printed_formula"], "3");
    let csv = stdout(&["count", "--n", "4", "--what", "types", "--format", "csv"]);
    assert_eq!(csv, "n,type,count\n4,\"(0,2,0,0)\",3\n");
}

#[test]
fn dist_schema() {
    let v = json(&["dist", "--n", "4"]);
    assert_eq!(v["n"], 4);
    let pmf = v["pmf"].as_array().unwrap();
    let exact: Vec<_> = pmf.iter().map(|e| e["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["2/3", "0/1", "1/3"]);
    assert_eq!(pmf[0]["k"], 0);
    assert_eq!(pmf[2]["float"].as_f64().unwrap(), 1.0 / 3.0);
    assert!(pmf[0]["poisson_limit"].as_f64().unwrap() > 0.6);
    assert_eq!(v["mean_exact"], "2/3");

    let v = json(&["dist", "--n", "2"]);
    let exact: Vec<_> = v["pmf"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["exact"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(exact, ["0/1", "1/1"]);

    let v = json(&["dist", "--n", "20"]);
    let p3 = v["pmf"][3]["float"].as_f64().unwrap();
    assert!((p3 - 0.012636).abs() < 1e-5);
}

#[test]
fn tail_output() {
    let v = json(&["tail", "--n", "6", "--k", "3"]);
    assert_eq!(v["exact"], "3/53");
    let v = json(&["tail", "--n", "20", "--k", "0"]);
    assert_eq!(v["exact"], "1/1");
}

#[test]
fn table_csv() {
    let csv = stdout(&["table"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,prob_ge_1,prob_ge_3,tv_poisson,mean"));
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 59);
    assert_eq!(rows[0][0], 2.0);
    assert_eq!(rows[0][1], 1.0);
    let peak = rows
        .iter()
        .max_by(|a, b| a[2].partial_cmp(&b[2]).unwrap())
        .unwrap();
    assert_eq!(peak[0], 6.0);
    let row20 = &rows[18];
    assert_eq!(row20[0], 20.0);
    assert!((row20[2] - (1.0 - 13.0 * (-0.5f64).exp() / 8.0)).abs() < 1e-7);
    let last = rows.last().unwrap();
    assert!((last[1] - 0.393_469_3).abs() < 1e-7);
}

#[test]
fn table_is_reproducible_and_writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let path_str = path.to_str().unwrap();
    stdout(&["--output", path_str, "table", "--n-min", "2", "--n-max", "25"]);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&["table", "--n-max", "25"]));
}

#[test]
fn simulate_schema_and_determinism() {
    let args = ["simulate", "--n", "8", "--trials", "20000", "--seed", "42"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["n"], 8);
    assert_eq!(v["trials"], 20000);
    assert_eq!(v["seed"], 42);
    let hist = v["histogram"].as_object().unwrap();
    let total: u64 = hist.values().map(|c| c.as_u64().unwrap()).sum();
    assert_eq!(total, 20000);
    assert!(hist.keys().all(|k| k.parse::<usize>().unwrap() <= 4));
    let rate = v["accept_rate"].as_f64().unwrap();
    assert!((rate - 14833.0 / 40320.0).abs() < 0.01);
}

#[test]
fn verify_default_cap() {
    let out = stdout(&["verify"]);
    assert!(out.ends_with("verify: cap 9, 120 checks, 0 failed\n"), "{out}");
    assert!(!out.contains("FAIL"));
}

#[test]
fn verify_cap_ten() {
    let v = json(&["verify", "--cap", "10", "--format", "json"]);
    assert_eq!(v["cap"], 10);
    assert_eq!(v["passed"], true);
}

#[test]
fn verify_cap_guard() {
    assert_eq!(wichtel(&["verify", "--cap", "12"]).status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_wichtel"))
        .args(["verify"])
        .env("WICHTEL_ORACLE_CAP", "11")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_wichtel"))
        .args(["verify", "--format", "json"])
        .env("WICHTEL_ORACLE_CAP", "4")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cap"], 4);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["count", "--n", "5", "--what", "bogus"][..],
        &["count", "--n", "5", "--what", "PNk"],
        &["count", "--n", "5", "--what", "PNk", "--k", "3"],
        &["count", "--n", "5001", "--what", "FN"],
        &["dist", "--n", "1"],
        &["table", "--n-min", "9", "--n-max", "3"],
        &["simulate", "--n", "1", "--trials", "5"],
        &["frobnicate"],
    ] {
        assert_eq!(wichtel(args).status.code(), Some(2), "{args:?}");
    }
}
