use std::path::Path;
use std::process::{Command, Output};

fn gpi(args: &[&str], cache: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_gpi"));
    c.args(args).env_remove("GPI_CACHE_DIR");
    if let Some(dir) = cache {
        c.env("GPI_CACHE_DIR", dir);
    }
    c.output().expect("gpi runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

/// Writes a fixture document into `dir` and returns its path.
fn fixture_file(dir: &Path, name: &str) -> String {
    let path = dir.join(format!("{name}.json"));
    let o = gpi(&["construct", "fixture", "--json", &format!(r#"{{"name": "{name}"}}"#), "--out", path.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn check_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let ut2 = fixture_file(dir.path(), "ut2-z2");
    let o = gpi(&["check", &ut2], None);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["valid"], true);

    let broken = dir.path().join("broken.json");
    std::fs::write(
        &broken,
        r#"{"field": "Q", "semigroup": {"ref": "trivial"},
            "basis": [{"name": "a", "degree": 0}, {"name": "b", "degree": 0}],
            "products": [[0, 0, [[1, "1/1"]]], [0, 1, [[0, "1/1"]]]]}"#,
    )
    .unwrap();
    let o = gpi(&["check", broken.to_str().unwrap()], None);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("Associativity"));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"field\": \"Q\",\n  \"basis\": [").unwrap();
    let o = gpi(&["check", bad.to_str().unwrap()], None);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(code(&gpi(&["check", "/nonexistent/doc.json"], None)), 2);
}

#[test]
fn construct_round_trip_is_hash_stable() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("m2.json");
    std::fs::write(&params, r#"{"t0": 3, "classes": [2, 1], "t1": 0}"#).unwrap();
    let a = gpi(&["construct", "m2-family", params.to_str().unwrap()], None);
    let b = gpi(&["construct", "m2-family", params.to_str().unwrap()], None);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let doc = dir.path().join("doc.json");
    std::fs::write(&doc, &a.stdout).unwrap();
    let c1 = gpi(&["check", doc.to_str().unwrap()], None);
    assert_eq!(code(&c1), 0);
    let v: serde_json::Value = serde_json::from_slice(&c1.stdout).unwrap();
    assert_eq!(v["dim"], 6);

    // re-serializing the document does not move the hash
    let again = dir.path().join("again.json");
    let o = gpi(&["construct", "fixture", "--json", r#"{"name": "ft-rzb2"}"#, "--out", again.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let h1: serde_json::Value = serde_json::from_slice(&gpi(&["check", again.to_str().unwrap()], None).stdout).unwrap();
    let h2: serde_json::Value = serde_json::from_slice(&gpi(&["check", &fixture_file(dir.path(), "ft-rzb2")], None).stdout).unwrap();
    assert_eq!(h1["content_hash"], h2["content_hash"]);

    let o = gpi(&["construct", "munn", "--json", r#"{"n": 2, "m": 2, "sandwich": [["0", "0"], ["1", "1"]]}"#], None);
    assert_eq!(code(&o), 1);
}

#[test]
fn codim_csv_and_store() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let ut2 = fixture_file(dir.path(), "ut2-z2");
    let o = gpi(&["codim", &ut2, "--n", "3", "--graded"], Some(&cache));
    assert_eq!(code(&o), 0);
    let csv = stdout(&o);
    assert!(csv.starts_with("n,mode,codim\n1,graded,2\n2,graded,5\n"));
    assert!(!csv.contains('\r'));
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
    let again = gpi(&["codim", &ut2, "--n", "3", "--graded", "--threads", "1"], Some(&cache));
    assert_eq!(again.stdout, o.stdout);
    let fresh = gpi(&["codim", &ut2, "--n", "3", "--graded", "--threads", "2"], None);
    assert_eq!(fresh.stdout, o.stdout);

    let out = dir.path().join("codim.csv");
    let o = gpi(&["codim", &ut2, "--n", "2", "--out", out.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "n,mode,codim\n1,ordinary,1\n2,ordinary,2\n");

    let m2 = fixture_file(dir.path(), "m2-trivial");
    let o = gpi(&["codim", &m2, "--n", "12", "--budget", "1000"], None);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget"));
}

#[test]
fn exponent_report_and_growth() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("m2.json");
    let o = gpi(&["construct", "m2-family", "--json", r#"{"t0": 3, "classes": [2, 1]}"#, "--out", doc.to_str().unwrap()], None);
    assert_eq!(code(&o), 0);
    let csv = dir.path().join("growth.csv");
    let o = gpi(&["exponent", doc.to_str().unwrap(), "--n", "3", "--out", csv.to_str().unwrap()], None);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m2"]["exponent_exact"], "3 + 2*sqrt(2)");
    let table = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(table.lines().count(), 4);
    assert!(table.starts_with("n,codim_graded,root,upper_bound,cap_ok,witness_partition,witness_dim,witness_ok\n"));

    let ut2 = fixture_file(dir.path(), "ut2-z2");
    assert_eq!(code(&gpi(&["exponent", &ut2], None)), 1);
    // --n needs --out
    assert_eq!(code(&gpi(&["exponent", &ut2, "--n", "2"], None)), 2);
}

#[test]
fn analyze_reports() {
    let dir = tempfile::tempdir().unwrap();
    let v: serde_json::Value =
        serde_json::from_slice(&gpi(&["analyze", &fixture_file(dir.path(), "m2-dual-numbers")], None).stdout).unwrap();
    assert_eq!(v["graded_simple"]["graded_simple"], false);
    assert_eq!(v["wm"]["exists"], false);
    let v: serde_json::Value =
        serde_json::from_slice(&gpi(&["analyze", &fixture_file(dir.path(), "munn-ones-2x2")], None).stdout).unwrap();
    assert_eq!(v["wm"]["exists"], true);
}
