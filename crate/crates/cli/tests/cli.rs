use std::path::PathBuf;
use std::process::{Command, Output};

fn palwords(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_palwords"))
        .args(args)
        .env_remove("PALWORDS_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("palwords-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn build_then_analyze() {
    let path = scratch("d9.grail");
    let o = palwords(&[
        "build",
        "--alphabet",
        "2",
        "--family",
        "D",
        "--cap",
        "9",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = palwords(&["analyze", "--automaton", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"], "FinitelyManyPeriodic");
    assert_eq!(v["word_count"], 12);
    assert!(v["words"].as_array().unwrap().iter().any(|w| w == "(001011)^ω"));
}

#[test]
fn analyze_finds_birecurrence() {
    let o = palwords(&["analyze", "--family", "D", "--cap", "11"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["classification"], "UncountablyManyAperiodic");
    assert_eq!(v["states"], 810);
    assert!(v["birecurrent"]["x0"].is_string());
}

#[test]
fn count_zero_terms() {
    let path = scratch("e1.json");
    let o = palwords(&[
        "build",
        "-k",
        "3",
        "--family",
        "E",
        "--cap",
        "1",
        "--format",
        "json",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = palwords(&["count", "--automaton", path.to_str().unwrap(), "--terms", "0"]);
    assert_eq!(stdout(&o), "0 1\n");
    let o = palwords(&["count", "--automaton", path.to_str().unwrap(), "--terms", "4"]);
    assert_eq!(stdout(&o), "0 1\n1 3\n2 6\n3 6\n4 6\n");
}

#[test]
fn count_matches_listed_values() {
    let o = palwords(&["count", "-k", "3", "--family", "D", "--cap", "5", "--terms", "8"]);
    let values: Vec<String> = stdout(&o)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().to_string())
        .collect();
    assert_eq!(values.join(" "), "1 3 9 27 81 42 54 66 78");
}

#[test]
fn annihilate_both_methods() {
    let o = palwords(&[
        "annihilate",
        "-k",
        "3",
        "--family",
        "D",
        "--cap",
        "5",
        "--method",
        "both",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([-1, -1, 0, 0, 1]));
}

#[test]
fn asymptotics_reports_root() {
    let o = palwords(&[
        "asymptotics",
        "-k",
        "3",
        "--family",
        "R",
        "--cap",
        "0",
        "--odd-cap",
        "3",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let alpha = v["alpha"]["value"].as_f64().unwrap();
    assert!((alpha - 1.465571231876768).abs() < 1e-9);
    let c = v["fit"]["c1"].as_f64().unwrap();
    assert!((c - 5.37711043).abs() < 1e-4);
}

#[test]
fn verify_stabilization() {
    let o = palwords(&[
        "verify",
        "-k",
        "4",
        "--family",
        "S",
        "--allowed",
        allowed_sigma4().to_str().unwrap(),
        "--seed",
        "01",
        "--infix",
        "23",
        "--nmax",
        "5",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["stabilized_at"], 1);
    assert_eq!(v["all_accepted"], true);
}

fn allowed_sigma4() -> PathBuf {
    let path = scratch("sigma4.txt");
    std::fs::write(&path, "0 1 2 3\n").unwrap();
    path
}

#[test]
fn verify_rejected_word_is_a_check_failure() {
    let o = palwords(&[
        "verify",
        "--family",
        "D",
        "--cap",
        "9",
        "--seed",
        "0000000000",
        "--infix",
        "1",
        "--nmax",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn oracle_count_and_list() {
    let o = palwords(&["oracle", "-k", "3", "--family", "E", "--cap", "1", "--length", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 6);
    let o = palwords(&[
        "oracle", "-k", "3", "--family", "E", "--cap", "1", "--length", "3", "--list",
    ]);
    let mut words: Vec<String> = stdout(&o).lines().map(String::from).collect();
    words.sort();
    assert_eq!(words, ["012", "021", "102", "120", "201", "210"]);
}

#[test]
fn export_round_trips() {
    let grail = scratch("e2.grail");
    let json = scratch("e2.json");
    palwords(&[
        "build",
        "-k",
        "3",
        "--family",
        "E",
        "--cap",
        "2",
        "-o",
        grail.to_str().unwrap(),
    ]);
    let o = palwords(&[
        "export",
        grail.to_str().unwrap(),
        "--format",
        "json",
        "-o",
        json.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let a = palwords(&["count", "--automaton", grail.to_str().unwrap(), "--terms", "20"]);
    let b = palwords(&["count", "--automaton", json.to_str().unwrap(), "--terms", "20"]);
    assert_eq!(stdout(&a), stdout(&b));
    let dot = palwords(&["export", grail.to_str().unwrap(), "--format", "dot"]);
    assert!(stdout(&dot).starts_with("digraph"));
    let m = palwords(&["minimize", json.to_str().unwrap()]);
    assert!(m.status.success());
}

#[test]
fn exit_codes() {
    assert_eq!(palwords(&[]).status.code(), Some(2));
    assert_eq!(
        palwords(&["build", "--family", "Q", "--cap", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        palwords(&["build", "--family", "T", "--cap", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        palwords(&["count", "--automaton", "/nonexistent/file"]).status.code(),
        Some(2)
    );
    assert_eq!(
        palwords(&["build", "--family", "D", "--cap", "11", "--budget", "10"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_palwords"))
        .args(["build", "--family", "D", "--cap", "11"])
        .env("PALWORDS_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn reproduce_parity_length_rows() {
    let o = palwords(&["reproduce", "--section", "parity-length", "--criterion", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("PASS")).count(), 3);
    assert!(out.contains("R_{2,5}(Σ_2)") && out.contains("R_{6,3}(Σ_2)"));
}

#[test]
fn reproduce_reports_failures_with_exit_one() {
    let o = palwords(&["reproduce", "--section", "t", "--criterion", "2", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let failing: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap())
        .filter(|c| c["pass"] == false && c["diagnostic"] == false)
        .collect();
    assert_eq!(failing.len(), 6);
}

#[test]
fn reproduce_is_deterministic() {
    let args = [
        "reproduce",
        "--criterion",
        "5",
        "--section",
        "length",
        "--seed",
        "7",
        "--json",
    ];
    let strip = |o: Output| -> Vec<String> {
        stdout(&o)
            .lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("seconds");
                v.to_string()
            })
            .collect()
    };
    assert_eq!(strip(palwords(&args)), strip(palwords(&args)));
}
