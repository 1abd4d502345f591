use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn iasi(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_iasi"))
        .current_dir(dir)
        .args(args)
        .env_remove("IASI_ORACLE_CAP")
        .env_remove("IASI_ISO_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn gen_to(dir: &Path, name: &str, family: &str, params: &str) -> String {
    let out = iasi(dir, &["gen", "--family", family, "--params", params, "-o", name]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    name.to_string()
}

#[test]
fn gen_helm() {
    let dir = tempfile::tempdir().unwrap();
    let out = iasi(dir.path(), &["gen", "--family", "helm", "--params", "n=4"]);
    assert_eq!(code(&out), 0);
    let g = stdout_json(&out);
    assert_eq!(g["n"], 9);
    assert_eq!(g["edges"].as_array().unwrap().len(), 12);
    assert_eq!(g["roles"]["0"], "hub");
    assert!(out.stdout.ends_with(b"}\n"));
}

#[test]
fn gen_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let a = iasi(dir.path(), &["gen", "--family", "sun", "--params", "n=5,hull=complete", "--power", "2"]);
    let b = iasi(dir.path(), &["gen", "--family", "sun", "--params", "n=5;hull=complete", "--power", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let g: iasi_core::Graph = serde_json::from_slice(&a.stdout).unwrap();
    let again = serde_json::to_string_pretty(&g).unwrap() + "\n";
    assert_eq!(again.as_bytes(), a.stdout.as_slice());
}

#[test]
fn strong_pipeline_on_k4() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "k4.json", "complete", "n=4");
    let out = iasi(d, &["label", "--graph", "k4.json", "--mode", "strong", "-o", "f.json"]);
    assert_eq!(code(&out), 0);
    let out = iasi(d, &["verify", "--graph", "k4.json", "--labeling", "f.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["is_strong"], true);
}

#[test]
fn verify_exit_status_tracks_property() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "p.json", "path", "m=1");
    write(d, "f.json", r#"{"vertex_labels":{"0":[0,1],"1":[0,1,5]}}"#);
    let out = iasi(d, &["verify", "--graph", "p.json", "--labeling", "f.json", "--property", "strong"]);
    assert_eq!(code(&out), 1);
    let r = stdout_json(&out);
    assert_eq!(r["is_strong"], false);
    assert_eq!(r["failing_edges"][0]["card_sum"], 5);
    let out = iasi(d, &["verify", "--graph", "p.json", "--labeling", "f.json", "--property", "iasi"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn uniform_labels_and_decisions() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "c6.json", "cycle", "n=6");
    let out = iasi(d, &["label", "--graph", "c6.json", "--mode", "uniform", "--k", "6", "--divisors", "2,3", "-o", "f.json"]);
    assert_eq!(code(&out), 0);
    let out = iasi(d, &["verify", "--graph", "c6.json", "--labeling", "f.json", "--property", "strongly-uniform", "--k", "6"]);
    assert_eq!(code(&out), 0);

    gen_to(d, "c5.json", "cycle", "n=5");
    let out = iasi(d, &["label", "--graph", "c5.json", "--mode", "uniform", "--k", "6"]);
    assert_eq!(code(&out), 3, "non-bipartite input is a precondition failure");
    let out = iasi(d, &["decide", "--graph", "c5.json", "--k", "6"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["admits"], false);
    assert_eq!(v["witness"], Value::Null);
    let out = iasi(d, &["decide", "--graph", "c5.json", "--k", "9"]);
    assert_eq!(stdout_json(&out)["admits"], true);
}

#[test]
fn search_absent_and_found() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "c3.json", "cycle", "n=3");
    let base = ["search", "--graph", "c3.json", "--predicate", "strongly-uniform", "--max-element", "8", "--max-card", "2"];
    let out = iasi(d, &[&base[..], &["--k", "2"]].concat());
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["admits"], false);
    assert_eq!(v["reason"], "absent within bounds");
    let out = iasi(d, &[&base[..], &["--k", "4"]].concat());
    assert_eq!(stdout_json(&out)["admits"], true);
    let out = iasi(d, &[&base[..], &["--k", "4", "--budget", "10"]].concat());
    assert_eq!(code(&out), 4);
}

#[test]
fn malformed_json_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "bad.json", "{\n  \"n\": 3,\n  \"edges\": [[0, 1],\n}");
    let out = iasi(d, &["decide", "--graph", "bad.json", "--k", "2"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("bad.json:4:"), "{err}");

    write(d, "loop.json", r#"{"n": 2, "edges": [[1, 1]]}"#);
    assert_eq!(code(&iasi(d, &["decide", "--graph", "loop.json", "--k", "2"])), 2);
}

#[test]
fn transforms() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "p.json", "path", "m=3");
    let out = iasi(d, &["transform", "--op", "line", "--graph", "p.json"]);
    assert_eq!(stdout_json(&out)["n"], 3);
    iasi(d, &["label", "--graph", "p.json", "--mode", "strong", "-o", "f.json"]);
    let out = iasi(d, &["transform", "--op", "subdivide", "--graph", "p.json", "--labeling", "f.json", "--edge", "1,2"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["graph"]["n"], 5);
    assert_eq!(v["labeling"]["vertex_labels"].as_object().unwrap().len(), 5);

    let out = iasi(d, &["transform", "--op", "subdivide", "--graph", "p.json", "--edge", "0,3"]);
    assert_eq!(code(&out), 2, "not an edge");

    gen_to(d, "c4.json", "cycle", "n=4");
    gen_to(d, "k1.json", "complete", "n=1");
    let out = iasi(d, &["transform", "--op", "join", "--graph", "c4.json", "--other", "k1.json", "-o", "w.json"]);
    assert_eq!(code(&out), 0);
    gen_to(d, "w4.json", "wheel", "n=4");
    assert_eq!(code(&iasi(d, &["iso", "--graph", "w.json", "--other", "w4.json"])), 0);
    assert_eq!(code(&iasi(d, &["iso", "--graph", "w.json", "--other", "c4.json"])), 1);
    assert_eq!(code(&iasi(d, &["iso", "--graph", "w.json", "--other", "w4.json", "--iso-cap", "3"])), 4);

    // A path inside a triangle cannot be reduced.
    gen_to(d, "k3.json", "complete", "n=3");
    let out = iasi(d, &["transform", "--op", "reduce", "--graph", "k3.json", "--path", "0,1,2"]);
    assert_eq!(code(&out), 3);
    let out = iasi(d, &["transform", "--op", "reduce", "--graph", "c4.json", "--path", "0,1,2"]);
    assert_eq!(stdout_json(&out)["n"], 3);
    let out = iasi(d, &["transform", "--op", "line", "--graph", "k1.json"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn nourish_reports() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(
        d,
        "grid.json",
        r#"[{"family":"complete_bipartite","m":3,"n":4,"power":2},{"family":"cycle","n":7,"power":2}]"#,
    );
    let out = iasi(d, &["nourish", "--grid", "grid.json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "family,params,r,omega,formula,match,note\n\
         complete_bipartite,m=3;n=4,2,7,7,true,r >= 2: m+n\n\
         cycle,n=7,2,3,3,true,r < floor(n/2): r+1\n"
    );
    let out = iasi(d, &["nourish", "--grid", "grid.json", "--format", "json", "--oracle-cap", "6"]);
    let v = stdout_json(&out);
    assert_eq!(v["reports"].as_array().unwrap().len(), 0);
    assert_eq!(v["skipped"].as_array().unwrap().len(), 2);
    write(d, "bad_grid.json", r#"[{"family":"wheel","n":2}]"#);
    assert_eq!(code(&iasi(d, &["nourish", "--grid", "bad_grid.json"])), 2);
}

#[test]
fn env_cap_override() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    write(d, "grid.json", r#"[{"family":"cycle","n":7,"power":2}]"#);
    let out = Command::new(env!("CARGO_BIN_EXE_iasi"))
        .current_dir(d)
        .args(["nourish", "--grid", "grid.json", "--format", "json"])
        .env("IASI_ORACLE_CAP", "5")
        .output()
        .unwrap();
    let v = stdout_json(&out);
    assert_eq!(v["skipped"].as_array().unwrap().len(), 1);
}

#[test]
fn output_must_differ_from_input() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    gen_to(d, "g.json", "cycle", "n=4");
    let out = iasi(d, &["label", "--graph", "g.json", "--mode", "strong", "-o", "g.json"]);
    assert_eq!(code(&out), 2);
    assert!(fs::read_to_string(d.join("g.json")).unwrap().contains("\"n\": 4"));
}

#[test]
fn check_paper_writes_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let out = iasi(d, &["check-paper"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 0, "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("criterion ")).count(), 8);
    let ledger = fs::read_to_string(d.join("reports/discrepancy-ledger.md")).unwrap();
    assert!(ledger.contains("### Mismatches"));
    assert!(ledger.contains("K3+K3 with k = 4"));
    assert!(d.join("reports/nourish-diagnostic.csv").exists());
}
