use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_pa-lcd"));
    c.env_remove("PA_LCD_THREADS");
    c
}

fn run(args: &[&str], dir: &Path) -> Output {
    bin().args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn oracle_examples() {
    let dir = tempfile::tempdir().unwrap();
    for (args, want) in [
        (vec!["oracle", "prob-dk", "--n", "2", "--k", "1", "--s", "1"], "2/3 (exact)"),
        (vec!["oracle", "expected-count", "--n", "600", "--m", "1", "--d", "1"], "100.0"),
        (vec!["oracle", "mode-s01", "--n", "100", "--k", "25"], "50"),
        (vec!["oracle", "count-ns", "--n", "2", "--k", "1", "--s", "1"], "2"),
        (vec!["oracle", "ratio-f", "--n", "2", "--k", "1", "--s", "0"], "2/1 (exact)"),
    ] {
        let o = run(&args, dir.path());
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
    let log = run(&["oracle", "prob-dk", "--n", "5000", "--k", "10", "--s", "3"], dir.path());
    assert!(stdout(&log).trim().ends_with("(log)"));
}

#[test]
fn oracle_errors_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    assert!(!run(&["oracle", "no-such-formula"], dir.path()).status.success());
    let o = run(&["oracle", "mode-s02", "--n", "10", "--k", "0"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("domain"));
}

#[test]
fn enumerate_rows_and_cap() {
    let dir = tempfile::tempdir().unwrap();
    for (n, rows) in [("2", 3), ("3", 15)] {
        let o = run(&["enumerate", "--n", n, "--out", "p.csv"], dir.path());
        assert!(o.status.success());
        let text = fs::read_to_string(dir.path().join("p.csv")).unwrap();
        assert_eq!(text.lines().count(), rows + 1);
    }
    let o = run(&["enumerate", "--n", "9", "--out", "p.csv"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["generate", "--n", "1", "--m", "1", "--out", "loop.csv"], dir.path());
    assert!(o.status.success());
    assert_eq!(fs::read_to_string(dir.path().join("loop.csv")).unwrap(), "1,1\n");
    let header: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("loop.csv.header.json")).unwrap())
            .unwrap();
    assert_eq!(header["n"], 1);

    let o = run(&["generate", "--n", "1000", "--m", "2", "--out", "g.csv", "--seed", "5"], dir.path());
    assert!(o.status.success());
    let text = fs::read_to_string(dir.path().join("g.csv")).unwrap();
    assert_eq!(text.lines().count(), 2000);

    let digest = |name: &str| -> Value {
        let m: Value = serde_json::from_str(
            &fs::read_to_string(dir.path().join(format!("{name}.manifest.json"))).unwrap(),
        )
        .unwrap();
        m["outputs"][name].clone()
    };
    for name in ["a.csv", "b.csv"] {
        let o = run(&["generate", "--n", "500", "--variant", "urn", "--seed", "9", "--out", name], dir.path());
        assert!(o.status.success());
    }
    assert_eq!(digest("a.csv"), digest("b.csv"));

    let o = run(&["generate", "--n", "4", "--format", "json", "--variant", "pairing", "--out", "g.json"], dir.path());
    assert!(o.status.success());
    let doc: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("g.json")).unwrap()).unwrap();
    assert_eq!(doc["edges"].as_array().unwrap().len(), 4);
}

#[test]
fn region_prints_supremum() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["experiment", "region", "--system", "theorem1"], dir.path());
    assert!(o.status.success());
    assert!(stdout(&o).contains("sup alpha = 1/14"));

    fs::write(dir.path().join("sys.txt"), "# a box\n1 0 >= 0\n1 0 <= 1/3\n0 1 >= 0\n0 1 <= 1\n").unwrap();
    let o = run(
        &["experiment", "region", "--inequalities", "sys.txt", "--expect", "1/3", "--out", "r.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
    let csv = fs::read_to_string(dir.path().join("r.csv")).unwrap();
    assert!(csv.starts_with("system,alpha,beta,"));
    assert_eq!(csv.lines().count(), 5);

    let o = run(&["experiment", "region", "--system", "theorem2-case2", "--expect", "1/6"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible"));
}

#[test]
fn fraction_passes_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["experiment", "fraction", "--n", "100000", "--m", "1", "--d", "1", "--replicates", "50", "--out", "f.json"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS in_degree_vs_limit"));
    let report: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("f.json")).unwrap()).unwrap();
    assert_eq!(report["replicates"].as_array().unwrap().len(), 50);
    let manifest: Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("f.json.manifest.json")).unwrap()).unwrap();
    assert!(manifest["master_seed"].is_u64());
    assert!(manifest["argv"].as_array().unwrap().iter().any(|a| a == "--seed"));

    let o = run(&["replay", "--manifest", "f.json.manifest.json"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("identical f.json"));

    fs::write(dir.path().join("f.csv"), "tampered\n").unwrap();
    let copy = fs::read_to_string(dir.path().join("f.json.manifest.json")).unwrap();
    fs::write(dir.path().join("saved.manifest.json"), &copy).unwrap();
    // Replay rewrites the outputs, so a tampered file is restored.
    let o = run(&["replay", "--manifest", "saved.manifest.json"], dir.path());
    assert!(o.status.success());
}

#[test]
fn replay_detects_nondeterminism() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["generate", "--n", "50", "--out", "g.csv", "--seed", "1"], dir.path());
    assert!(o.status.success());
    let path = dir.path().join("g.csv.manifest.json");
    let mut m: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    m["outputs"]["g.csv"] = Value::String("0".repeat(64));
    fs::write(&path, serde_json::to_string(&m).unwrap()).unwrap();
    let o = run(&["replay", "--manifest", "g.csv.manifest.json"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("DIFFERS g.csv"));
}

#[test]
fn failing_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["experiment", "gamma", "--n", "20000", "--m", "3", "--dlo", "5", "--dhi", "50", "--seed", "2"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
    assert!(stdout(&o).contains("FAIL gamma_in_range"));
}

#[test]
fn thread_count_does_not_change_results() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["experiment", "concentration", "--n", "2000", "--replicates", "100", "--seed", "4"];
    let one = run(&[&args[..], &["--threads", "1", "--out", "one.json"]].concat(), dir.path());
    let many = bin()
        .args(args)
        .args(["--out", "many.json"])
        .env("PA_LCD_THREADS", "4")
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(one.status.success() && many.status.success());
    assert_eq!(
        fs::read(dir.path().join("one.json")).unwrap(),
        fs::read(dir.path().join("many.json")).unwrap()
    );
}

#[test]
fn sums_and_corollary_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["experiment", "sums", "--out", "s.json"], dir.path());
    assert!(o.status.success(), "{}", stdout(&o));
    for name in ["case1_ratio_band", "case2_ratio_band", "case3_ratio_band", "s2_chain"] {
        assert!(stdout(&o).contains(&format!("PASS {name}")));
    }
    let o = run(
        &["experiment", "corollary", "--n-grid", "1000,10000", "--replicates", "4", "--seed", "8"],
        dir.path(),
    );
    assert!(stdout(&o).contains("strictly_decreasing"));
    let o = run(&["experiment", "corollary", "--e", "0.1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}
