use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn billiards(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_billiards"))
        .args(args)
        .env_remove("BILLIARDS_THREADS")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = billiards(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

fn code(args: &[&str]) -> i32 {
    billiards(args).status.code().unwrap()
}

#[test]
fn sigma_reports_exact_values() {
    let v = json(&["sigma", "--family", "A", "--rank", "2", "--word", "2,1,0", "--p", "4/5"]);
    assert_eq!(v["sigma2_rational"], "4/3");
    assert_eq!(v["method"], "single-s0");
    assert_eq!(v["schema_version"], 1);

    let v = json(&["sigma", "--family", "A", "--rank", "2", "--word", "2,1,1,0", "--p", "1/2"]);
    assert_eq!(v["sigma2_rational"], "1/3");

    let v = json(&["sigma", "--family", "E", "--rank", "8", "--p", "1/2"]);
    assert_eq!(v["sigma2_rational"], "1/480");

    let v = json(&["sigma", "--family", "C", "--rank", "2", "--word", "2,0,1,0", "--p", "0.25", "--method", "general"]);
    assert_eq!(v["method"], "general");
    assert_eq!(v["p"], "1/4");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "2", "--p", "zz"]), 2);
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "2", "--p", "1"]), 2);
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "2", "--word", "3,1,0", "--p", "1/2"]), 2);
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "2", "--word", "", "--p", "1/2"]), 2);
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "2", "--word", "2,1,1", "--p", "1/3", "--method", "single-s0"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn inadmissible_and_budget_exit_codes() {
    assert_eq!(code(&["sigma", "--family", "B", "--rank", "2", "--p", "1/2"]), 3);
    assert_eq!(code(&["plot", "--family", "A", "--rank", "3", "--p", "1/2"]), 3);
    let long = ["1,0"; 12].join(",");
    assert_eq!(code(&["sigma", "--family", "A", "--rank", "1", "--word", &long, "--p", "1/2", "--method", "general"]), 4);
}

#[test]
fn length_of_word_power() {
    let v = json(&["length", "--family", "A", "--rank", "2", "--word", "2,1,0", "--word-power", "4"]);
    assert_eq!(v["length"], 12);
}

#[test]
fn table_rows_match() {
    let v = json(&["table", "--p", "1/3", "--format", "json", "--max-rank", "4"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["status"] == "MATCH"), "{v}");
}

#[test]
fn roots_json() {
    let v = json(&["roots", "--family", "G", "--rank", "2"]);
    assert_eq!(v["weyl_order"], 12);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 6);
}

#[test]
fn simulation_is_reproducible_and_dumps_elements() {
    let dir = tempfile::tempdir().unwrap();
    let dump = dir.path().join("final.json");
    let args = ["simulate", "--family", "C", "--rank", "2", "--p", "4/5", "--K", "50", "--trials", "20", "--seed", "9"];
    let a = json(&args);
    let b = json(&args);
    assert_eq!(a["stats"], b["stats"]);
    assert_eq!(a["metadata"]["seed"], 9);

    let mut with_dump = args.to_vec();
    let dump_s = dump.to_str().unwrap();
    with_dump.extend(["--dump-final", dump_s]);
    json(&with_dump);
    let v = json(&["length", "--family", "C", "--rank", "2", "--element", dump_s]);
    assert!(v["length"].as_u64().is_some());
}

#[test]
fn plot_writes_svg_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("walk.svg");
    let csv = dir.path().join("walk.csv");
    let base = ["plot", "--family", "G", "--rank", "2", "--p", "3/5", "--K", "40", "--seed", "2"];
    let run = |extra: &[&str], path: &Path| {
        let mut a = base.to_vec();
        a.extend(extra);
        a.extend(["-o", path.to_str().unwrap()]);
        assert_eq!(code(&a), 0);
        std::fs::read_to_string(path).unwrap()
    };
    let s = run(&[], &svg);
    assert!(s.starts_with("<svg") && s.trim_end().ends_with("</svg>"));
    let c = run(&["--format", "csv"], &csv);
    assert!(c.starts_with("hit_index,kept,x,y\n"));
    assert_eq!(c.lines().count(), 2 + 40 * 3);
}

#[test]
fn first_passage_runs() {
    let v = json(&["firstpassage", "--family", "A", "--rank", "2", "--p", "4/5", "--trials", "2000", "--seed", "1"]);
    let t = v["stats"]["mean_t"].as_f64().unwrap();
    assert!((t - 6.0).abs() < 0.6, "{t}");
}
