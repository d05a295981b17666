use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn flatphase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_flatphase"))
        .args(args)
        .env_remove("FLATPHASE_MAX_EVALS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("flatphase-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn constants_q2() {
    let o = flatphase(&["constants", "--q", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("C_2 = 2.5066282746 + 2.5066282746i"), "{s}");
    assert!(s.contains("E1(-i) = -0.3374039229 + 0.6247132564i"), "{s}");
}

#[test]
fn theorem_factored_passes() {
    let o = flatphase(&["theorem", "--p", "1", "--q", "2", "--method", "factored"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("PASS"));
}

#[test]
fn newton_quadrant_corner() {
    let o = flatphase(&["newton", "--support", "0,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("d = 2\n"), "{s}");
    assert!(s.contains("m = 1\n"), "{s}");
    assert!(s.contains("t^(-0.5)"), "{s}");
    assert!(s.contains("flat term ignored"), "{s}");
}

#[test]
fn newton_without_data_gives_header_only_csv() {
    let o = flatphase(&["newton", "--support", "1,1", "--format", "csv"]);
    assert_eq!(stdout(&o), "piece,X,re,im,abs_err,scaled_re,scaled_im\n");
}

#[test]
fn failed_verification_exits_one() {
    // the stated L2 limit omits the 1/p Jacobian factor, so p = 2 misses it
    let o = flatphase(&["lemma", "--part", "ii", "--p", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"pass\": false"));
}

#[test]
fn lemma_json_schema() {
    let o = flatphase(&["lemma", "--part", "i", "--p", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let keys = ["\"target\"", "\"c_hat\"", "\"rel_error\"", "\"pass\": true"];
    let mut last = 0;
    for k in keys {
        let pos = s.find(k).unwrap_or_else(|| panic!("{k} missing in {s}"));
        assert!(pos > last, "field order");
        last = pos;
    }
}

#[test]
fn csv_rows_per_grid_point() {
    let o = flatphase(&["eval", "--piece", "L1", "--x", "5,10,20", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let lines: Vec<_> = s.lines().collect();
    assert_eq!(lines[0], "piece,X,re,im,abs_err,scaled_re,scaled_im");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("L1,5.0000000000000000e0,"));
    assert!(lines.iter().skip(1).all(|l| l.split(',').count() == 7));
}

#[test]
fn output_is_deterministic() {
    let args = ["pieces", "--grid", "5,10", "--format", "csv"];
    let a = flatphase(&args);
    let b = flatphase(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 1 + 18 * 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(flatphase(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(flatphase(&["constants", "--bogus"]).status.code(), Some(2));
    assert_eq!(flatphase(&["theorem", "--p", "0"]).status.code(), Some(2));
    assert_eq!(flatphase(&["constants", "--q", "1"]).status.code(), Some(2));
    assert_eq!(
        flatphase(&["lemma", "--grid", "50,25"]).status.code(),
        Some(2)
    );
    assert_eq!(
        flatphase(&["newton", "--support", "0,0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        flatphase(&["eval", "--piece", "L1", "--x", "40", "--repr", "direct"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bad_eval_budget_is_a_usage_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_flatphase"))
        .args(["eval", "--piece", "L1"])
        .env("FLATPHASE_MAX_EVALS", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn writes_to_file_and_rejects_unwritable() {
    let dir = scratch_dir("out");
    let path = dir.join("c.json");
    let o = flatphase(&[
        "constants",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(&path).unwrap().contains("\"c_q\""));
    let bad = dir.join("missing").join("c.json");
    let o = flatphase(&["constants", "--out", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn config_file_with_flag_override() {
    let dir = scratch_dir("cfg");
    let path = dir.join("run.cfg");
    fs::write(&path, "format = json\n[constants]\nq = 3\n").unwrap();
    let cfg = path.to_str().unwrap();
    let o = flatphase(&["constants", "--config", cfg]);
    assert!(stdout(&o).contains("\"q\": 3"), "{}", stdout(&o));
    let o = flatphase(&["constants", "--config", cfg, "--q", "4"]);
    assert!(stdout(&o).contains("\"q\": 4"));
    fs::write(&path, "[constants]\nnonsense = 1\n").unwrap();
    assert_eq!(
        flatphase(&["constants", "--config", cfg]).status.code(),
        Some(2)
    );
    fs::remove_dir_all(&dir).unwrap();
}
