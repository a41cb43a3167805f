use std::process::{Command, Output};

use serde_json::Value;

fn nk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nk"))
        .args(args)
        .output()
        .expect("nk runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn schema() -> jsonschema::Validator {
    let text = include_str!("../../../schema/nk-output.schema.json");
    jsonschema::validator_for(&serde_json::from_str(text).unwrap()).unwrap()
}

fn json_of(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = nk(&all);
    assert!(
        o.status.success() || o.status.code() == Some(1),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let errors: Vec<String> = schema().iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    v
}

fn dim(table: &Value, n: i64, i: i64) -> u64 {
    table["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["n"] == n && e["i"] == i)
        .map(|e| e["dim"].as_u64().unwrap())
        .unwrap()
}

#[test]
fn compute_dual_numbers() {
    let o = nk(&["compute", "ring Q[x]/(x^2)", "--n", "-1..3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("TK_1         1     0     0"), "{text}");
    assert!(text.contains("TK_2         0     1     0     0"), "{text}");
    let t = json_of(&["compute", "ring Q[x]/(x^2)", "--n", "-1..3"]);
    assert_eq!(dim(&t, 1, 1), 1);
    assert_eq!(dim(&t, 2, 2), 1);
    let nonzero: Vec<_> = t["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["dim"] != 0)
        .collect();
    // TK_3^(2) = HH_2^(1) lies outside the first two rows
    assert_eq!(nonzero.len(), 3);
}

#[test]
fn compute_cusp_semigroup() {
    let t = json_of(&[
        "compute",
        "--semigroup",
        "2,3",
        "--n",
        "-2..1",
        "--weight",
        "10",
    ]);
    assert_eq!(dim(&t, 0, 1), 1);
    assert_eq!(dim(&t, -1, 1), 0);
    assert_eq!(dim(&t, -2, 1), 0);
    assert_eq!(t["weight_bound"], 10);
}

#[test]
fn compute_etale_is_zero() {
    let t = json_of(&["compute", "ring Q[x]/(x^2-1)", "--n", "0..2"]);
    assert!(t["totals"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["dim"] == 0));
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&nk(&["compute", "--builtin", "fat-point-3", "--n", "0..2"]));
    let t = json_of(&["compute", "--builtin", "fat-point-3", "--n", "0..2"]);
    for r in t["totals"].as_array().unwrap() {
        let n = r["n"].as_i64().unwrap();
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("TK_{n} ")))
            .unwrap();
        assert!(
            line.trim_end().ends_with(&format!(" {}", r["dim"])),
            "{line}"
        );
    }
}

#[test]
fn ring_from_file() {
    let dir = std::env::temp_dir().join(format!("nk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ring.txt");
    std::fs::write(&path, "ring Q[x]/(x^3)\n").unwrap();
    let t = json_of(&["compute", path.to_str().unwrap(), "--n", "1..1"]);
    assert_eq!(dim(&t, 1, 1), 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_suites() {
    let o = nk(&["verify", "cartier"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("80 checks, 0 failed"));
    let v = json_of(&["verify", "twopath", "ring Q[x]/(x^3)", "--N", "3"]);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 4);
    let v = json_of(&["verify", "cech", "--builtin", "cross", "--degree", "6"]);
    assert_eq!(v["passed"], true);
    for suite in ["derham", "hodge", "sbi", "kunneth"] {
        let o = nk(&["verify", suite, "--builtin", "dual-numbers", "--N", "2"]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
    }
    let o = nk(&["verify", "derham", "--builtin", "cusp", "--weight", "10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn report_verdicts() {
    let o = nk(&["report", "--semigroup", "1", "--n", "0"]);
    assert!(stdout(&o).contains("NK_0=0"));
    assert!(stdout(&o).contains("N²K_0=0: consistent"));
    let v = json_of(&["report", "--builtin", "cusp", "--n", "1"]);
    assert_eq!(v["verdicts"]["nk_prev_zero"], false);
    assert_eq!(v["verdicts"]["biconditional_holds"], true);
    let v = json_of(&["report", "--builtin", "dual-numbers", "--n", "1"]);
    assert_eq!(v["verdicts"]["nk_n_zero"], false);
    assert_eq!(v["verdicts"]["k_regular"], false);
}

#[test]
fn usage_errors_exit_2() {
    let o = nk(&["verify", "bogus"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("available: derham, cartier"));
    let o = nk(&["compute", "ring Q[x]/(x^2 +)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("position 16"));
    let o = nk(&["compute", "--builtin", "cross"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Artinian"));
    let o = nk(&["compute", "--n", "3..1", "--builtin", "etale2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nk(&["compute", "--semigroup", "2,4"]);
    assert_eq!(o.status.code(), Some(2));
    let o = nk(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}
