use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_specker600"));
    c.env_remove("SPECKER600_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("run specker600")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

#[test]
fn verify_all_is_deterministic() {
    let a = run(&["verify-all"]);
    let b = run(&["verify-all", "--threads", "1"]);
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    let text = stdout(&a);
    for n in 1..=10 {
        assert!(text.contains(&format!("criterion {n}: ")), "criterion {n} missing");
    }
    assert_eq!(a.status.code() == Some(0), !text.contains(": FAIL"));
}

#[test]
fn fast_mode_gives_the_same_verdicts() {
    let verdicts = |o: &Output| -> Vec<String> {
        stdout(o).lines().filter(|l| l.starts_with("criterion ")).map(str::to_string).collect()
    };
    let full = run(&["verify-all"]);
    let fast = run(&["verify-all", "--fast"]);
    assert_eq!(verdicts(&full), verdicts(&fast));
    assert_eq!(full.status.code(), fast.status.code());
}

#[test]
fn json_report_parses() {
    let o = run(&["verify-all", "--fast", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 10);
    assert_eq!(v["mode"], "fast");
}

#[test]
fn corrupted_catalog_fails_at_basis_count() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("catalog.json");
    let o = run(&["catalog", "--format", "json", "-o", good.to_str().unwrap()]);
    assert!(o.status.success());

    let ok = run(&["verify-all", "--fast", "--catalog", good.to_str().unwrap()]);
    assert!(stdout(&ok).contains("criterion 2: PASS"));

    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    // Ray 1 becomes (1, τ, τ-1, 0), an odd permutation of a vertex pattern.
    doc["rays"][0]["vec"] = serde_json::json!([[1, 0], [0, 1], [-1, 1], [0, 0]]);
    let bad = dir.path().join("corrupt.json");
    std::fs::write(&bad, serde_json::to_string(&doc).unwrap()).unwrap();
    let o = run(&["verify-all", "--catalog", bad.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("75 bases"), "stderr: {err}");
    assert!(!stdout(&o).contains("criterion 3"));
}

#[test]
fn solve_exit_codes() {
    let whole = run(&["solve", "--rays", "1-60"]);
    assert_eq!(whole.status.code(), Some(1));
    assert!(stdout(&whole).contains("uncolorable"));

    let basis = run(&["solve", "--rays", "1,2,3,4", "--format", "json"]);
    assert_eq!(basis.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&basis.stdout).unwrap();
    assert_eq!(v["result"]["witness"]["green"], serde_json::json!([1]));

    let starved = run(&["solve", "--rays", "1-60", "--node-limit", "1"]);
    assert_eq!(starved.status.code(), Some(2));
}

#[test]
fn solve_reads_ray_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("set.txt");
    let list = run(&["critical", "--size", "30", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&list.stdout).unwrap();
    let ids: Vec<String> = v["sets"][0]["rays"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    std::fs::write(&path, ids.join("\n")).unwrap();
    let o = run(&["solve", "--rays", path.to_str().unwrap(), "--proof-tree"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("parity: 15 intact bases"));
    assert!(text.contains("proof tree"));
}

#[test]
fn witness_from_the_36_ray_deletion() {
    let list = run(&["critical", "--size", "36", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&list.stdout).unwrap();
    let first: Vec<u64> = v["sets"][0]["rays"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(first.contains(&1));
    let rest: Vec<String> = first.iter().filter(|&&r| r != 1).map(|r| r.to_string()).collect();
    let o = run(&["solve", "--rays", &rest.join(",")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn facsimile_markers() {
    let t6 = stdout(&run(&["critical", "--size", "30", "--facsimile"]));
    assert_eq!(t6.matches('*').count(), 120);
    assert_eq!(t6.matches('_').count(), 120);
    let j = run(&["critical", "--size", "36", "--facsimile", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 25);
}

#[test]
fn symmetry_orbit_of_a_ray() {
    let o = run(&["symmetry", "--orbit", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["orbit"]["size"], 60);
    assert_eq!(v["orbit"]["stabilizerOrder"], 120);
}

#[test]
fn peres_inequality_report() {
    let o = run(&["inequality", "--instance", "peres18", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["quantum"], 9);
    assert_eq!(v["classical"], 7);
    assert_eq!(v["gap"], 2);
}

#[test]
fn exploration_is_reproducible() {
    let args = ["explore", "--samples", "8", "--seed", "7", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["label"], "conjecture exploration");
}
