use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_girth-forge"))
}

fn fixture(id: &str, file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(id).join(file)
}

fn run(cmd: &mut Command) -> Output {
    let out = cmd.output().unwrap();
    assert!(out.status.success() || out.status.code() == Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn gen_base_writes_five_cubic_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("b.pg");
    run(bin().args(["gen-base", "--k", "3", "--n", "2", "-o"]).arg(&f));
    let text = std::fs::read_to_string(&f).unwrap();
    assert_eq!(text.matches("pregraph 2").count(), 5);
    run(bin().args(["gen-base", "--k", "3", "--n", "2", "--no-semi", "--no-loops", "-o"]).arg(&f));
    assert_eq!(std::fs::read_to_string(&f).unwrap().matches("pregraph").count(), 1);
}

#[test]
fn lift_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("p.g6");
    let id = "petersen-dumbbell-c5";
    run(bin()
        .arg("lift")
        .arg("--base")
        .arg(fixture(id, "base.pg"))
        .args(["--group", "C5", "--volt"])
        .arg(fixture(id, "volt.txt"))
        .arg("-o")
        .arg(&g6));
    let ok = run(bin().arg("verify").arg("-i").arg(&g6).args(["--k", "3", "--girth", "5", "--vgr", "--egr"]));
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).contains("n=10 k=3 girth=5"));
    let bad = run(bin().arg("verify").arg("-i").arg(&g6).args(["--no-g1", "--report", "json"]));
    assert_eq!(bad.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    assert_eq!(v[0]["lambda_v"], serde_json::json!({"regular": 6}));
    assert_eq!(v[0]["failed"], serde_json::json!(["no-g1"]));
}

#[test]
fn run_and_query_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let jobs = dir.path().join("jobs.jsonl");
    std::fs::write(&jobs, r#"{"problem": "cage(3,5)", "mode": "bta", "bases": {"generate": {"n_max": 2}}, "groups": ["C5", "C6"]}"#).unwrap();
    let cat = dir.path().join("cat.jsonl");
    let out = run(bin().arg("run").arg("--jobs").arg(&jobs).args(["--workers", "2", "--catalog"]).arg(&cat).env("GIRTH_FORGE_SEED", "9"));
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["best"][0]["order"], 10);
    let best = run(bin().args(["catalog", "best", "--problem", "cage(3,5)", "--catalog"]).arg(&cat));
    assert_eq!(stdout(&best).trim(), "cage(3,5): order 10, 1 graph(s)");
    let none = run(bin().args(["catalog", "best", "--problem", "cage(4,9)", "--catalog"]).arg(&cat));
    assert_eq!(stdout(&none).trim(), "cage(4,9): none");
    let bad = bin().arg("run").arg("--jobs").arg(&jobs).arg("--catalog").arg(&cat).env("GIRTH_FORGE_SEED", "x").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn excise_and_complete() {
    let dir = tempfile::tempdir().unwrap();
    let ex = dir.path().join("ex.g6");
    let out = run(bin()
        .args(["excise", "--pattern", "girth12-k4", "--k", "4", "--cage"])
        .arg(fixture("cage-4-12", "graph.g6"))
        .arg("-o")
        .arg(&ex));
    assert!(String::from_utf8_lossy(&out.stderr).contains("removed 15 of 728"));
    let comp = dir.path().join("comp");
    run(bin().args(["complete", "--k", "4", "--girth", "11", "--limit", "1", "--budget", "30", "-i"]).arg(&ex).arg("-o").arg(&comp));
    let v = run(bin().arg("verify").arg("-i").arg(comp.join("completions-0.g6")).args(["--k", "4", "--girth", "11"]));
    assert_eq!(v.status.code(), Some(0));
    assert!(stdout(&v).starts_with("0: n=713 k=4 girth=11"));
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("junk.g6");
    std::fs::write(&f, "not a graph\n").unwrap();
    let out = bin().arg("verify").arg("-i").arg(&f).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}
